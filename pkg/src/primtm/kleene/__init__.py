"""Normal form of machine-computable functions, by simulation and as a PR term."""

from .compile import (
    GENERIC_NAMES,
    Compiled,
    YBound,
    arity_definitions,
    compiler_env,
    machine_code_expr,
    machine_code_term,
    step_bound_to_y_bound,
    theorem1_compile,
)
from .pipeline import (
    Prop1Bounds,
    Witness,
    adversarial_below,
    check_prop1,
    decode_loose,
    initial_span,
    is_terminal,
    kfun,
    machine_of,
    mu_search,
    output_value,
    prop1_bounds,
    sample_below,
    t_pred,
    theorem_b0_eval,
    u_extract,
)
