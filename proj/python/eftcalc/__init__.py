"""One-loop effective actions of dipole-coupled neutral fermions."""

from ._core import (
    DomainError,
    Error,
    ModelError,
    NotReducible,
    RenormalizationIncomplete,
    SchemeError,
    bubble_laurent,
    check_quantization,
    compute,
    reduce_bf,
    selftest,
    trace,
)

__all__ = [
    "DomainError",
    "Error",
    "ModelError",
    "NotReducible",
    "RenormalizationIncomplete",
    "SchemeError",
    "bubble_laurent",
    "check_quantization",
    "compute",
    "reduce_bf",
    "selftest",
    "trace",
]
