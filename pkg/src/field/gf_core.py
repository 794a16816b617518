"""
Table-driven arithmetic in F_{p^n}, n = 2m, with the subfield F_q (q = p^m)
and the unit circle U_{q+1} = {x : x^(q+1) = 1}.

Elements are canonical indices: the coefficient vector (c_0, ..., c_{n-1}) of
c_0 + c_1 X + ... + c_{n-1} X^{n-1} in the polynomial basis is encoded as
sum(c_i * p^i). Index 0 is the zero element, indices 0..p-1 form the prime field.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from src.config import CHUNK_ROWS, LOG_FORMAT, LOG_LEVEL, MAX_ORDER
from src.exceptions import FieldBuildError, FieldSizeError, InvalidParameterError

from .polynomials import find_generator, first_irreducible, multiplication_matrix, multiply_mod, validate_modulus

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

FieldElem = int


class FieldCtx:
    """
    Immutable arithmetic context for F_{p^{2m}}.

    Attributes:
        p, m, n, q, order: characteristic, half degree, degree 2m, p^m and p^n
        modulus: monic irreducible of degree n, low-to-high coefficients
        generator: canonical index of the multiplicative generator g
        exp_table: exp_table[i] = g^i for 0 <= i < order - 1
        log_table: log_table[x] = i with g^i = x; log_table[0] = -1 (unused)
        subfield_mask: boolean per index, True exactly on F_q
        unit_circle: g^(j(q-1)) for j = 0..q, so unit_circle[0] = 1
    """

    def __init__(
        self,
        p: int,
        m: int,
        modulus: Tuple[int, ...],
        generator: int,
        exp_table: np.ndarray,
        log_table: np.ndarray,
    ):
        self.p = p
        self.m = m
        self.n = 2 * m
        self.q = p**m
        self.order = p**self.n
        self.group_order = self.order - 1
        self.modulus = tuple(modulus)
        self.generator = generator
        self.exp_table = exp_table
        self.log_table = log_table
        self.weights = p ** np.arange(self.n, dtype=np.int64)

        logs = log_table.copy()
        logs[0] = 0
        self.subfield_mask = logs % (self.q + 1) == 0
        self.unit_circle = exp_table[np.arange(self.q + 1, dtype=np.int64) * (self.q - 1)]

        for table in (self.exp_table, self.log_table, self.weights, self.subfield_mask, self.unit_circle):
            table.setflags(write=False)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, order={self.order}, modulus={list(self.modulus)})"

    def __getstate__(self):
        return {
            "p": self.p,
            "m": self.m,
            "modulus": self.modulus,
            "generator": self.generator,
            "exp_table": np.array(self.exp_table),
            "log_table": np.array(self.log_table),
        }

    def __setstate__(self, state):
        self.__init__(**state)

    # ------------------------------------------------------------------
    # Scalar arithmetic
    # ------------------------------------------------------------------

    def check_element(self, x: FieldElem) -> int:
        x = int(x)
        if not 0 <= x < self.order:
            raise InvalidParameterError(f"Element index {x} outside [0, {self.order})")
        return x

    def element_from_int(self, c: int) -> FieldElem:
        """The prime-field element c mod p."""
        return int(c) % self.p

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        a, b = self.check_element(a), self.check_element(b)
        if self.p == 2:
            return a ^ b
        out, weight = 0, 1
        for _ in range(self.n):
            out += ((a // weight + b // weight) % self.p) * weight
            weight *= self.p
        return out

    def neg(self, a: FieldElem) -> FieldElem:
        a = self.check_element(a)
        if self.p == 2:
            return a
        out, weight = 0, 1
        for _ in range(self.n):
            out += (-(a // weight) % self.p) * weight
            weight *= self.p
        return out

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return self.add(a, self.neg(b))

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        a, b = self.check_element(a), self.check_element(b)
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(int(self.log_table[a]) + int(self.log_table[b])) % self.group_order])

    def inv(self, a: FieldElem) -> FieldElem:
        a = self.check_element(a)
        if a == 0:
            raise InvalidParameterError("Zero has no multiplicative inverse")
        return int(self.exp_table[-int(self.log_table[a]) % self.group_order])

    def div(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return self.mul(a, self.inv(b))

    def pow(self, x: FieldElem, e: int) -> FieldElem:
        """
        x^e by discrete-log reduction e * log(x) mod (order - 1).

        pow(0, 0) is 1 by convention; pow(0, e) is 0 for e > 0.

        Raises:
            InvalidParameterError: If x = 0 and e < 0
        """
        x = self.check_element(x)
        e = int(e)
        if x == 0:
            if e < 0:
                raise InvalidParameterError("0 cannot be raised to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[x]) * e) % self.group_order])

    def frobenius_q(self, x: FieldElem) -> FieldElem:
        """x^q; the fixed points are exactly F_q."""
        return self.pow(x, self.q)

    def norm_q(self, x: FieldElem) -> FieldElem:
        """x^(q+1), which always lies in F_q."""
        return self.pow(x, self.q + 1)

    def in_subfield(self, x: FieldElem) -> bool:
        return bool(self.subfield_mask[self.check_element(x)])

    def in_unit_circle(self, x: FieldElem) -> bool:
        x = self.check_element(x)
        return x != 0 and self.norm_q(x) == 1

    def subfield_trace(self, x: FieldElem) -> FieldElem:
        """
        Tr_1^m(x) = x + x^p + ... + x^(p^(m-1)) for x in F_q.

        Raises:
            InvalidParameterError: If x is not in F_q
        """
        if not self.in_subfield(x):
            raise InvalidParameterError(f"Element {x} is not in the subfield F_{self.q}")
        total, term = 0, int(x)
        for _ in range(self.m):
            total = self.add(total, term)
            term = self.pow(term, self.p)
        return total

    def is_square_subfield(self, x: FieldElem) -> bool:
        """
        Quadratic character on F_q^*: True iff x^((q-1)/2) = 1.

        Raises:
            InvalidParameterError: If p = 2, x = 0 or x is not in F_q
        """
        if self.p == 2:
            raise InvalidParameterError("Quadratic character is undefined for p = 2")
        if int(x) == 0:
            raise InvalidParameterError("Quadratic character is undefined at 0")
        if not self.in_subfield(x):
            raise InvalidParameterError(f"Element {x} is not in the subfield F_{self.q}")
        return self.pow(x, (self.q - 1) // 2) == 1

    def primitive_cube_root(self) -> FieldElem:
        """
        w = g^((order-1)/3) for the canonical generator g.

        Raises:
            InvalidParameterError: If p = 3 (x^3 - 1 = (x - 1)^3)
        """
        if self.p == 3:
            raise InvalidParameterError("No primitive cube root of unity in characteristic 3")
        return int(self.exp_table[self.group_order // 3])

    # ------------------------------------------------------------------
    # Vectorized arithmetic over index arrays
    # ------------------------------------------------------------------

    def add_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor(a, b)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        for weight in self.weights:
            out += ((a // weight + b // weight) % self.p) * weight
        return out

    def sub_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor(a, b)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        for weight in self.weights:
            out += ((a // weight - b // weight) % self.p) * weight
        return out

    def neg_array(self, a) -> np.ndarray:
        return self.sub_array(np.zeros_like(np.asarray(a, dtype=np.int64)), a)

    def mul_array(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = np.zeros(a.shape, dtype=np.int64)
        nonzero = (a != 0) & (b != 0)
        out[nonzero] = self.exp_table[(self.log_table[a[nonzero]] + self.log_table[b[nonzero]]) % self.group_order]
        return out

    def inv_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise InvalidParameterError("Zero has no multiplicative inverse")
        return self.exp_table[(-self.log_table[a]) % self.group_order]

    def pow_array(self, x, e: int) -> np.ndarray:
        """Elementwise x^e with the same zero conventions as pow."""
        x = np.asarray(x, dtype=np.int64)
        e = int(e)
        zero = x == 0
        if e < 0 and np.any(zero):
            raise InvalidParameterError("0 cannot be raised to a negative power")
        out = np.full(x.shape, 1 if e == 0 else 0, dtype=np.int64)
        exponent = e % self.group_order
        out[~zero] = self.exp_table[(self.log_table[x[~zero]] * exponent) % self.group_order]
        return out

    def trace_array(self, x) -> np.ndarray:
        """Tr_1^m elementwise; callers guarantee x lies in F_q."""
        x = np.asarray(x, dtype=np.int64)
        total = np.zeros(x.shape, dtype=np.int64)
        term = x
        for _ in range(self.m):
            total = self.add_array(total, term)
            term = self.pow_array(term, self.p)
        return total

    # ------------------------------------------------------------------
    # Element sets
    # ------------------------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def prime_field_elements(self) -> np.ndarray:
        return np.arange(self.p, dtype=np.int64)

    def subfield_elements(self) -> np.ndarray:
        return np.flatnonzero(self.subfield_mask).astype(np.int64)


def _scale_by_constant(values: np.ndarray, matrix: np.ndarray, p: int, weights: np.ndarray) -> np.ndarray:
    """Multiply every element of values by the constant whose matrix is given."""
    out = np.empty_like(values)
    for start in range(0, values.size, CHUNK_ROWS):
        block = values[start : start + CHUNK_ROWS]
        digits = (block[:, None] // weights[None, :]) % p
        out[start : start + CHUNK_ROWS] = ((digits @ matrix) % p) @ weights
    return out


def _build_exp_table(p: int, modulus: Tuple[int, ...], generator: int) -> np.ndarray:
    """exp_table[i] = g^i, filled by repeated doubling: block [L, 2L) is block [0, L) times g^L."""
    n = len(modulus) - 1
    group_order = p**n - 1
    weights = p ** np.arange(n, dtype=np.int64)
    exp_table = np.ones(1, dtype=np.int64)
    step = generator
    while exp_table.size < group_order:
        needed = min(exp_table.size, group_order - exp_table.size)
        matrix = multiplication_matrix(step, modulus, p)
        exp_table = np.concatenate([exp_table, _scale_by_constant(exp_table[:needed], matrix, p, weights)])
        step = multiply_mod(step, step, modulus, p)
    return exp_table


def build_field(p: int, m: int, modulus: Optional[Sequence[int]] = None) -> FieldCtx:
    """
    Build the arithmetic context for F_{p^{2m}}.

    Args:
        p: Prime characteristic
        m: Half of the extension degree (q = p^m)
        modulus: Optional monic irreducible of degree 2m, low-to-high.
                 Defaults to the lexicographically smallest one.

    Returns:
        A FieldCtx satisfying all table, subfield and unit-circle invariants

    Raises:
        InvalidParameterError: If p is not prime, m < 1 or the modulus is invalid
        FieldSizeError: If p^{2m} exceeds the configured cap
        FieldBuildError: If the constructed tables violate an invariant
    """
    if not isinstance(p, (int, np.integer)) or not isprime(int(p)):
        raise InvalidParameterError(f"p must be prime, got {p}")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InvalidParameterError(f"m must be a positive integer, got {m}")
    p, m = int(p), int(m)
    n = 2 * m
    order = p**n
    if order > MAX_ORDER:
        raise FieldSizeError(f"Field order {p}^{n} = {order} exceeds the cap {MAX_ORDER}")

    try:
        modulus = validate_modulus(modulus, p, n) if modulus is not None else first_irreducible(p, n)
        generator = find_generator(modulus, p)
        exp_table = _build_exp_table(p, modulus, generator)

        log_table = np.full(order, -1, dtype=np.int64)
        log_table[exp_table] = np.arange(order - 1, dtype=np.int64)
        if exp_table[0] != 1 or np.any(log_table[1:] < 0):
            raise FieldBuildError(f"Powers of {generator} do not cover F_{order}^*")

        ctx = FieldCtx(p, m, modulus, generator, exp_table, log_table)
        _check_invariants(ctx)
    except InvalidParameterError:
        raise
    except Exception as e:
        logger.error(f"Error building F_{p}^{n}: {str(e)}")
        raise

    logger.info(f"Built F_{p}^{n} (order {order}) with modulus {list(modulus)}, generator {generator}")
    return ctx


def _check_invariants(ctx: FieldCtx) -> None:
    subfield = ctx.subfield_elements()
    if subfield.size != ctx.q or np.any(ctx.pow_array(subfield, ctx.q) != subfield):
        raise FieldBuildError("Subfield marker does not match {x : x^q = x}")
    circle = ctx.unit_circle
    if np.unique(circle).size != ctx.q + 1 or np.any(ctx.pow_array(circle, ctx.q + 1) != 1):
        raise FieldBuildError("Unit circle does not match {x : x^(q+1) = 1}")
    expected_meet = 1 if ctx.p == 2 else 2
    if np.count_nonzero(ctx.subfield_mask[circle]) != expected_meet:
        raise FieldBuildError("F_q and U_{q+1} must meet exactly in {x : x^2 = 1}")
