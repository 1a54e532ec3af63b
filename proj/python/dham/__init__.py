"""Delay Hamiltonian toolkit."""

from ._core import (
    ConfigError,
    DomainError,
    Error,
    ParseError,
    VerificationError,
    analyze,
    canonical,
    is_zero,
    legendre,
    recurse,
    simulate,
    total_derivative,
    verify_identity,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "ParseError",
    "VerificationError",
    "analyze",
    "canonical",
    "is_zero",
    "legendre",
    "recurse",
    "simulate",
    "total_derivative",
    "verify_identity",
]
