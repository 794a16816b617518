"""
Polynomial helpers over F_p used while building an extension field.

Coefficient sequences in this module are low-to-high (c_0, c_1, ..., c_n).
sympy's galoistools works high-to-low, so conversion happens at the boundary.
"""

import itertools
import logging
from typing import List, Sequence, Tuple

import numpy as np
from sympy import primefactors
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem, gf_strip

from src.config import LOG_FORMAT, LOG_LEVEL
from src.exceptions import InvalidParameterError, ModulusSearchError

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def index_to_coefficients(idx: int, p: int, n: int) -> List[int]:
    """Digits of a canonical index in base p, low-to-high, padded to length n."""
    coeffs = []
    for _ in range(n):
        idx, digit = divmod(idx, p)
        coeffs.append(digit)
    return coeffs


def coefficients_to_index(coeffs: Sequence[int], p: int) -> int:
    """Inverse of index_to_coefficients."""
    idx = 0
    for digit in reversed(coeffs):
        idx = idx * p + int(digit)
    return idx


def _to_gf(coeffs: Sequence[int]) -> List[int]:
    return gf_strip([int(c) for c in reversed(coeffs)])


def _from_gf(poly: Sequence[int], p: int) -> int:
    return coefficients_to_index([int(c) for c in reversed(poly)], p)


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """
    Irreducibility test for a polynomial over F_p.

    Args:
        coeffs: Low-to-high coefficients; the leading one must be nonzero.
        p: Prime characteristic.

    Returns:
        True if the polynomial has no factor of smaller positive degree.
    """
    poly = _to_gf(coeffs)
    if len(poly) < 2:
        return False
    return bool(gf_irreducible_p(poly, p, ZZ))


def validate_modulus(coeffs: Sequence[int], p: int, n: int) -> Tuple[int, ...]:
    """
    Check that coeffs describe a monic irreducible polynomial of degree n.

    Raises:
        InvalidParameterError: If the polynomial is malformed or reducible
    """
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != n + 1:
        raise InvalidParameterError(f"Modulus must have {n + 1} coefficients, got {len(coeffs)}")
    if any(c < 0 or c >= p for c in coeffs):
        raise InvalidParameterError(f"Modulus coefficients must lie in [0, {p})")
    if coeffs[-1] != 1:
        raise InvalidParameterError("Modulus must be monic")
    if not is_irreducible(coeffs, p):
        raise InvalidParameterError(f"Modulus {list(coeffs)} is reducible over F_{p}")
    return coeffs


def lexicographic_irreducibles(p: int, n: int, count: int = 1) -> List[Tuple[int, ...]]:
    """
    First monic irreducibles of degree n over F_p in canonical order.

    The order compares coefficient tuples (c_0, ..., c_{n-1}) lexicographically,
    c_0 first. For n > 1 a zero constant term means x divides the polynomial,
    so those candidates are skipped without testing.
    """
    found: List[Tuple[int, ...]] = []
    first_digits = range(1, p) if n > 1 else range(p)
    for c0 in first_digits:
        for rest in itertools.product(range(p), repeat=n - 1):
            coeffs = (c0,) + rest + (1,)
            if is_irreducible(coeffs, p):
                logger.debug(f"Irreducible of degree {n} over F_{p}: {list(coeffs)}")
                found.append(coeffs)
                if len(found) == count:
                    return found
    if not found:
        raise ModulusSearchError(f"No irreducible polynomial of degree {n} over F_{p} found")
    return found


def first_irreducible(p: int, n: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over F_p."""
    return lexicographic_irreducibles(p, n, 1)[0]


def multiply_mod(a: int, b: int, modulus: Sequence[int], p: int) -> int:
    """Product of two canonical indices modulo the field polynomial."""
    n = len(modulus) - 1
    product = gf_rem(gf_mul(_to_gf(index_to_coefficients(a, p, n)), _to_gf(index_to_coefficients(b, p, n)), p, ZZ),
                     _to_gf(modulus), p, ZZ)
    return _from_gf(product, p)


def power_mod(a: int, e: int, modulus: Sequence[int], p: int) -> int:
    """a^e modulo the field polynomial, e >= 0."""
    n = len(modulus) - 1
    result = gf_pow_mod(_to_gf(index_to_coefficients(a, p, n)), e, _to_gf(modulus), p, ZZ)
    return _from_gf(result, p)


def find_generator(modulus: Sequence[int], p: int) -> int:
    """
    Smallest canonical index whose multiplicative order is p^n - 1.

    An element g is primitive iff g^((p^n-1)/r) != 1 for every prime r | p^n - 1.

    Raises:
        ModulusSearchError: If no element passes (the modulus was not irreducible)
    """
    n = len(modulus) - 1
    group_order = p**n - 1
    cofactors = [group_order // r for r in primefactors(group_order)]
    for candidate in range(1, p**n):
        if all(power_mod(candidate, e, modulus, p) != 1 for e in cofactors):
            logger.debug(f"Generator {candidate} for modulus {list(modulus)}")
            return candidate
    raise ModulusSearchError(f"No generator of order {group_order} for modulus {list(modulus)}")


def multiplication_matrix(c: int, modulus: Sequence[int], p: int) -> np.ndarray:
    """
    Matrix of x -> c*x on F_p^n: row i holds the digits of c * X^i.

    A row vector of digits multiplied by this matrix (mod p) gives the digits of the product.
    """
    n = len(modulus) - 1
    rows = [index_to_coefficients(multiply_mod(c, p**i, modulus, p), p, n) for i in range(n)]
    return np.array(rows, dtype=np.int64)
