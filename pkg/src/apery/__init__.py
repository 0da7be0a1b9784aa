"""Exact, replayable checks around Apéry's proof that zeta(3) is irrational."""
from .errors import DSLSyntaxError, SingularPointError, SupportError, UnboundVariableError
from .polyalg import MultiPoly, RatFun
from .shiftalg import AnnRec, Proviso, ShiftOp, ore_right_divide, order_reduction_check
from .dsl import parse_certificate, parse_operator, render_operator
from .sequences import a, b, lam, z

__version__ = "0.1.0"

__all__ = [
    "DSLSyntaxError",
    "SingularPointError",
    "SupportError",
    "UnboundVariableError",
    "MultiPoly",
    "RatFun",
    "AnnRec",
    "Proviso",
    "ShiftOp",
    "ore_right_divide",
    "order_reduction_check",
    "parse_certificate",
    "parse_operator",
    "render_operator",
    "a",
    "b",
    "lam",
    "z",
]
