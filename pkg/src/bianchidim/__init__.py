"""Dimensions of non-genuine cuspidal Bianchi newform spaces.

Closed-form evaluation of the base-change, twisted base-change and CM
subspaces of cuspidal Bianchi newform spaces over imaginary quadratic
fields, plus the plumbing to subtract them from externally computed full
newform dimensions.
"""

from .arith import QuadField, SplittingType, class_number, kronecker
from .errors import (
    DuplicateKey,
    FormulaNegative,
    FormulaNonIntegral,
    MalformedHnf,
    MissingDPart,
    MissingScConstants,
    ParseError,
    PreconditionViolated,
)
from .invariants import TypeInvariants

__version__ = "0.1.0"

__all__ = [
    "QuadField",
    "SplittingType",
    "TypeInvariants",
    "class_number",
    "kronecker",
    "DuplicateKey",
    "FormulaNegative",
    "FormulaNonIntegral",
    "MalformedHnf",
    "MissingDPart",
    "MissingScConstants",
    "ParseError",
    "PreconditionViolated",
]
