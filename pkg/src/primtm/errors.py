"""Exception hierarchy shared by every subpackage."""


class PrimTMError(Exception):
    """Base class for all errors raised by primtm."""


class ZeroInput(PrimTMError, ValueError):
    pass


class Unmaterializable(PrimTMError, ArithmeticError):
    """An operation would need the digits of a number too large to hold."""


class ParseError(PrimTMError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ArityMismatch(PrimTMError, ValueError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        where = "/".join(self.path) if self.path else "<root>"
        super().__init__(f"{message} at {where}")


class UnresolvedRef(PrimTMError, KeyError):
    def __str__(self):
        return f"unresolved reference {self.args[0]!r}"


class BudgetExceeded(PrimTMError):
    """Honest evaluation ran out of schema applications."""


class MuDiverged(PrimTMError):
    """An unbounded minimisation found no witness before its ceiling."""


class NotPrimitiveRecursive(PrimTMError, ValueError):
    pass


class EmptyArgs(PrimTMError, ValueError):
    pass


class NonTermination(PrimTMError):
    def __init__(self, max_steps):
        self.max_steps = max_steps
        super().__init__(f"no terminal configuration within {max_steps} steps")


class NoOutputNumeral(PrimTMError, ValueError):
    pass


class MalformedConfig(PrimTMError, ValueError):
    pass


class MalformedMachine(PrimTMError, ValueError):
    pass


class WitnessRefuted(PrimTMError, AssertionError):
    """A witness-mode check failed; this always indicates a bug."""


class FitFailed(PrimTMError):
    pass


class TooManyVariables(PrimTMError, ValueError):
    pass


class TooManyNodes(PrimTMError, ValueError):
    pass


class MalformedGraph(PrimTMError, ValueError):
    pass
