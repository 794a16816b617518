"""
Exception hierarchy shared by the field, spectra, theory and CLI layers.
"""

from typing import Any, Optional


class SpectraError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(SpectraError, ValueError):
    """Input parameters or preconditions are violated."""


class GcdError(InvalidParameterError):
    """k is not coprime to q+1."""

    def __init__(self, k: int, q_plus_1: int, gcd: int):
        self.k = k
        self.q_plus_1 = q_plus_1
        self.gcd = gcd
        super().__init__(f"gcd(k, q+1) = gcd({k}, {q_plus_1}) = {gcd}; k must be coprime to q+1 = {q_plus_1}")


class FieldSizeError(SpectraError):
    """A size cap (field order or naive-oracle order) is exceeded."""


class FieldBuildError(SpectraError, RuntimeError):
    """The field context could not be built for valid input."""


class ModulusSearchError(FieldBuildError):
    """No irreducible modulus or no generator was found."""


class VerificationError(SpectraError):
    """A brute-force result disagrees with its prediction."""

    def __init__(self, message: str, mismatch: Optional[Any] = None):
        self.mismatch = mismatch
        super().__init__(message)
