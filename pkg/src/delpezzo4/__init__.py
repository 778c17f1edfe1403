"""Exact point counts on an open quartic del Pezzo surface and the
multiplicative-function experiments surrounding its height asymptotic."""

__version__ = "0.1.0"

from .errors import (
    BadForm,
    BadInput,
    BoundTooLarge,
    DegenerateModulus,
    MismatchError,
    NotADivisor,
    NotOnSurface,
    SingularForm,
    ZeroValue,
    ZeroVector,
)

__all__ = [
    "BadForm",
    "BadInput",
    "BoundTooLarge",
    "DegenerateModulus",
    "MismatchError",
    "NotADivisor",
    "NotOnSurface",
    "SingularForm",
    "ZeroValue",
    "ZeroVector",
    "__version__",
]
