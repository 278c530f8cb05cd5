"""Certified evaluation of Siegel and Hilbert modular equations."""

from .balls import (
    ACC_EXACT,
    ACC_NONE,
    BallError,
    ComplexBall,
    Context,
    DomainError,
    PrecisionError,
    RealBall,
    accuracy,
    adaptive_run,
    round_to_integer,
)

__all__ = [
    "ACC_EXACT",
    "ACC_NONE",
    "BallError",
    "ComplexBall",
    "Context",
    "DomainError",
    "PrecisionError",
    "RealBall",
    "accuracy",
    "adaptive_run",
    "round_to_integer",
]

__version__ = "0.1.0"
