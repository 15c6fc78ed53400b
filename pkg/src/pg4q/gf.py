"""Exact arithmetic in GF(2^h) via log/antilog tables.

Elements are packed integers in [0, q): bit k is the coefficient of x^k in
the polynomial residue. Addition is XOR; multiplication reduces modulo a
fixed irreducible polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Fixed default moduli so that coordinates are reproducible across runs.
# GF(4): x^2+x+1, GF(8): x^3+x+1, GF(16): x^4+x+1, GF(32): x^5+x^2+1.
DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
}


class FieldError(ValueError):
    pass


def clmul(a: int, b: int) -> int:
    """Carry-less (XOR) product of two GF(2) polynomials."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def polymod(a: int, m: int) -> int:
    """Remainder of the GF(2) polynomial a modulo m."""
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(m: int) -> bool:
    """Exhaustive trial division by every polynomial of degree <= deg(m)/2."""
    deg = m.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if polymod(m, f) == 0:
                return False
    return True


class GF:
    """The field GF(2^h) with a fixed irreducible modulus.

    Immutable after construction; all tables are plain numpy arrays and the
    instance is safe to share across threads.
    """

    def __init__(self, degree: int, modulus: int | None = None):
        if degree < 1:
            raise FieldError(f"degree must be >= 1, got {degree}")
        if modulus is None:
            if degree not in DEFAULT_MODULI:
                raise FieldError(f"no default modulus for degree {degree}")
            modulus = DEFAULT_MODULI[degree]
        if modulus.bit_length() - 1 != degree:
            raise FieldError(
                f"modulus degree {modulus.bit_length() - 1} != field degree {degree}"
            )
        if not is_irreducible(modulus):
            raise FieldError(f"modulus {modulus:#x} is reducible over GF(2)")
        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree
        self._build_tables()

    @classmethod
    def of_order(cls, q: int, modulus: int | None = None) -> "GF":
        h = q.bit_length() - 1
        if q != 1 << h or q < 2:
            raise FieldError(f"order must be a power of 2 >= 2, got {q}")
        return cls(h, modulus)

    def _build_tables(self) -> None:
        q = self.order
        # Find a generator of the multiplicative group; x is primitive for
        # all the default moduli but a user override may need the search.
        for g in range(2, q):
            seen = set()
            x = 1
            for _ in range(q - 1):
                seen.add(x)
                x = self._mul_slow(x, g)
            if len(seen) == q - 1:
                self.generator = g
                break
        else:
            self.generator = 1  # q = 2: trivial group
        exp = np.zeros(2 * (q - 1), dtype=np.int32)
        log = np.zeros(q, dtype=np.int32)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            exp[i + q - 1] = x
            log[x] = i
            x = self._mul_slow(x, self.generator)
        self.exp_table = exp
        self.log_table = log
        if q <= 256:
            mul = np.zeros((q, q), dtype=np.uint8)
            for a in range(1, q):
                for b in range(1, q):
                    mul[a, b] = exp[log[a] + log[b]]
            self.mul_table = mul
        else:
            self.mul_table = None
        inv = np.zeros(q, dtype=np.uint8 if q <= 256 else np.int32)
        for a in range(1, q):
            inv[a] = exp[(q - 1 - log[a]) % (q - 1)]
        self.inv_table = inv

    def _mul_slow(self, a: int, b: int) -> int:
        return polymod(clmul(a, b), self.modulus)

    # int-level operations; FieldElement wraps these with field checks
    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[self.log_table[a] + self.log_table[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        return int(self.exp_table[(self.log_table[a] * n) % (self.order - 1)])

    def trace(self, a: int) -> int:
        t, x = 0, a
        for _ in range(self.degree):
            t ^= x
            x = self.mul(x, x)
        return t

    def sqrt(self, a: int) -> int:
        # squaring is a bijection in characteristic 2: sqrt(a) = a^(q/2)
        x = a
        for _ in range(self.degree - 1):
            x = self.mul(x, x)
        return x

    def elements(self) -> range:
        return range(self.order)

    def element(self, bits: int) -> "FieldElement":
        return FieldElement(self, bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GF)
            and self.degree == other.degree
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.modulus))

    def __repr__(self) -> str:
        return f"GF(2^{self.degree}, modulus={self.modulus:#b})"


@dataclass(frozen=True)
class FieldElement:
    """A field element bound to its GF instance, with operator sugar."""

    field: GF
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < self.field.order:
            raise FieldError(f"element {self.bits} out of range for {self.field}")

    def _check(self, other: "FieldElement") -> None:
        if self.field != other.field:
            raise FieldError("elements belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.bits, other.bits))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.bits))

    def trace(self) -> "FieldElement":
        return FieldElement(self.field, self.field.trace(self.bits))

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.field, self.field.sqrt(self.bits))

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return format(self.bits, "x")


def to_hex(bits: int) -> str:
    return format(bits, "x")


def from_hex(s: str, field: GF) -> int:
    bits = int(s, 16)
    if not 0 <= bits < field.order:
        raise FieldError(f"hex value {s!r} out of range for {field}")
    return bits
