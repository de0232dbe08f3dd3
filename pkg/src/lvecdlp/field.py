"""Exact arithmetic in prime fields F_p with deterministic primality validation."""

from __future__ import annotations

from dataclasses import dataclass

_MAX_MODULUS_BITS = 64

# Witness set making Miller-Rabin deterministic for every n < 3.3 * 10**24,
# which covers all 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for 64-bit inputs)."""
    if n < 2:
        return False
    for small in _MR_WITNESSES:
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """A prime modulus together with the element factory for F_p.

    Moduli are runtime values so one process can work over many fields.
    The modulus must fit in 64 bits; everything this package ships is desk
    scale and the contract leaves room for a big-integer backend.
    """

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int):
            raise ValueError(f"modulus must be an integer, got {type(self.p).__name__}")
        if self.p < 2:
            raise ValueError(f"modulus must be >= 2, got {self.p}")
        if self.p.bit_length() > _MAX_MODULUS_BITS:
            raise ValueError(f"modulus {self.p} exceeds the {_MAX_MODULUS_BITS}-bit desk-scale bound")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def elem(self, value: int) -> FieldElement:
        """Canonical element with residue in [0, p)."""
        return FieldElement(value % self.p, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


@dataclass(frozen=True)
class FieldElement:
    """Immutable residue in [0, p).  Mixed-modulus arithmetic is rejected."""

    value: int
    field: PrimeField

    def _check(self, other: FieldElement) -> int:
        if self.field.p != other.field.p:
            raise ValueError(f"modulus mismatch: {self.field.p} vs {other.field.p}")
        return self.field.p

    def __add__(self, other: FieldElement) -> FieldElement:
        p = self._check(other)
        return FieldElement((self.value + other.value) % p, self.field)

    def __sub__(self, other: FieldElement) -> FieldElement:
        p = self._check(other)
        return FieldElement((self.value - other.value) % p, self.field)

    def __mul__(self, other: FieldElement) -> FieldElement:
        p = self._check(other)
        return FieldElement(self.value * other.value % p, self.field)

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value % self.field.p, self.field)

    def inv(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.field.p}")
        return FieldElement(pow(self.value, -1, self.field.p), self.field)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return self * other.inv()

    def __pow__(self, exponent: int) -> FieldElement:
        return FieldElement(pow(self.value, exponent, self.field.p), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} mod {self.field.p}"
