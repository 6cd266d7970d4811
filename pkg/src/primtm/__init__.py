"""A workbench for primitive recursion, Turing machines and Kleene normal form."""

__version__ = "0.1.0"
