"""
The power-map family F(x) = x^(k(q-1)) over F_{q^2}.
"""

from math import gcd

import numpy as np
from sympy import isprime

from src.exceptions import GcdError, InvalidParameterError


class PowerMapSpec:
    """
    Exponent data for F(x) = x^d with d = k(q-1) mod (p^{2m} - 1).

    x^(q-1) lands in U_{q+1}, so only k mod (q+1) matters; k is stored reduced.
    """

    def __init__(self, p: int, m: int, k: int):
        """
        Args:
            p: Prime characteristic
            m: Positive integer, q = p^m
            k: Positive integer coprime to q + 1

        Raises:
            InvalidParameterError: If p is not prime or m, k are not positive
            GcdError: If gcd(k, q+1) != 1
        """
        if not isprime(int(p)):
            raise InvalidParameterError(f"p must be prime, got {p}")
        if int(m) < 1:
            raise InvalidParameterError(f"m must be a positive integer, got {m}")
        if int(k) < 1:
            raise InvalidParameterError(f"k must be a positive integer, got {k}")

        self.p = int(p)
        self.m = int(m)
        self.q = self.p**self.m
        self.n = 2 * self.m
        self.order = self.p**self.n

        divisor = gcd(int(k), self.q + 1)
        if divisor != 1:
            raise GcdError(int(k), self.q + 1, divisor)
        self.k_input = int(k)
        self.k = int(k) % (self.q + 1)
        self.d = (self.k * (self.q - 1)) % (self.order - 1)

    @property
    def degenerate(self) -> bool:
        """(p, m) = (2, 1): q - 2 = 0, so the multiplicity reserved for b = 0 collapses onto 0."""
        return self.p == 2 and self.m == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerMapSpec) and (self.p, self.m, self.k) == (other.p, other.m, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.k))

    def __repr__(self) -> str:
        return f"PowerMapSpec(p={self.p}, m={self.m}, k={self.k}, d={self.d})"

    def check_context(self, ctx) -> None:
        """
        Raises:
            InvalidParameterError: If ctx is a different field
        """
        if (ctx.p, ctx.m) != (self.p, self.m):
            raise InvalidParameterError(
                f"Field context (p={ctx.p}, m={ctx.m}) does not match power map (p={self.p}, m={self.m})"
            )

    def value_table(self, ctx) -> np.ndarray:
        """F(x) for every canonical index x."""
        self.check_context(ctx)
        return ctx.pow_array(ctx.elements(), self.d)

    def apply(self, ctx, x: int) -> int:
        return ctx.pow(x, self.d)


def coprime_ks(q: int):
    """Every k in [1, q+1) with gcd(k, q+1) = 1."""
    return [k for k in range(1, q + 1) if gcd(k, q + 1) == 1]
