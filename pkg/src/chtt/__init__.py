"""An evaluator and desk-scale semantic checker for a cubical computational type theory."""

from chtt.opsem import eval_term, is_val, step, trace
from chtt.parse import parse, pretty
from chtt.syntax import alpha_eq, apply_subst, compose_subst, dsubst, expand_not, fd, tsubst

__all__ = [
    "alpha_eq", "apply_subst", "compose_subst", "dsubst", "eval_term", "expand_not", "fd",
    "is_val", "parse", "pretty", "step", "trace", "tsubst",
]
