"""Short-Weierstrass elliptic curve groups over prime fields, desk scale.

Curves are y^2 z = x^3 + a x z^2 + b z^3 over F_q with q >= 5.  Points are
kept in one of exactly two normal forms: affine (x : y : 1) or the identity
(0 : 1 : 0), so that equal points compare equal and monomial rows built from
them are unique per point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError
from .field import PrimeField, is_prime

DEFAULT_ENUMERATION_LIMIT = 1 << 20

IDENTITY_TOKEN = "O"


@dataclass(frozen=True)
class Point:
    """Projective point in normal form: z == 1, or the identity (0, 1, 0)."""

    x: int
    y: int
    z: int

    def __post_init__(self):
        if self.z not in (0, 1):
            raise ValueError("points must be normalized (z = 1) or the identity (z = 0)")
        if self.z == 0 and (self.x, self.y) != (0, 1):
            raise ValueError("the identity point is represented as (0 : 1 : 0)")

    @classmethod
    def affine(cls, x: int, y: int) -> Point:
        return cls(x, y, 1)

    @classmethod
    def identity(cls) -> Point:
        return cls(0, 1, 0)

    @property
    def is_identity(self) -> bool:
        return self.z == 0

    def __repr__(self) -> str:
        if self.is_identity:
            return "Point(O)"
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True)
class Curve:
    """Nonsingular short-Weierstrass curve over a prime field with q >= 5."""

    field: PrimeField
    a: int
    b: int

    def __post_init__(self):
        q = self.field.p
        if q < 5:
            raise ValueError("characteristic 2 and 3 are not supported; use q >= 5")
        object.__setattr__(self, "a", self.a % q)
        object.__setattr__(self, "b", self.b % q)
        disc = (4 * self.a**3 + 27 * self.b**2) % q
        if disc == 0:
            raise ValueError(f"singular curve: 4a^3 + 27b^2 = 0 mod {q}")

    @property
    def q(self) -> int:
        return self.field.p

    def contains(self, pt: Point) -> bool:
        if pt.is_identity:
            return True
        q = self.q
        return (pt.y * pt.y - (pt.x**3 + self.a * pt.x + self.b)) % q == 0

    def point(self, x: int, y: int) -> Point:
        """Validated affine point constructor."""
        pt = Point.affine(x % self.q, y % self.q)
        if not self.contains(pt):
            raise ValueError(f"({x}, {y}) is not on y^2 = x^3 + {self.a}x + {self.b} over F_{self.q}")
        return pt

    def negate(self, pt: Point) -> Point:
        if pt.is_identity:
            return pt
        return Point.affine(pt.x, -pt.y % self.q)

    def add(self, lhs: Point, rhs: Point) -> Point:
        """Chord-tangent group law with identity (0 : 1 : 0)."""
        if lhs.is_identity:
            return rhs
        if rhs.is_identity:
            return lhs
        f = self.field
        x1, y1 = f.elem(lhs.x), f.elem(lhs.y)
        x2, y2 = f.elem(rhs.x), f.elem(rhs.y)
        if x1 == x2 and (y1 + y2).value == 0:
            return Point.identity()
        if lhs == rhs:
            slope = (f.elem(3) * x1 * x1 + f.elem(self.a)) / (f.elem(2) * y1)
        else:
            slope = (y2 - y1) / (x2 - x1)
        x3 = slope * slope - x1 - x2
        y3 = slope * (x1 - x3) - y1
        return Point.affine(x3.value, y3.value)

    def scalar_mul(self, k: int, pt: Point) -> Point:
        """k-fold sum by double-and-add, k >= 0."""
        if k < 0:
            raise ValueError("scalar must be non-negative; reduce mod the group order first")
        acc = Point.identity()
        step = pt
        while k:
            if k & 1:
                acc = self.add(acc, step)
            step = self.add(step, step)
            k >>= 1
        return acc

    def group_order(self, max_field: int = DEFAULT_ENUMERATION_LIMIT) -> int:
        """Number of rational points including the identity, by exhaustive x-sweep.

        Counts square roots of the cubic via Euler's criterion.  Desk scale
        only; guarded by max_field.
        """
        q = self.q
        if q > max_field:
            raise BudgetExceededError(f"point counting limited to q <= {max_field}, got q = {q}")
        half = (q - 1) // 2
        count = 1
        for x in range(q):
            rhs = (x * x * x + self.a * x + self.b) % q
            if rhs == 0:
                count += 1
            elif pow(rhs, half, q) == 1:
                count += 2
        return count

    def points(self, max_field: int = DEFAULT_ENUMERATION_LIMIT) -> list[Point]:
        """All rational points (identity first), enumeration order fixed by x then y."""
        q = self.q
        if q > max_field:
            raise BudgetExceededError(f"point enumeration limited to q <= {max_field}, got q = {q}")
        out = [Point.identity()]
        for x in range(q):
            rhs = (x * x * x + self.a * x + self.b) % q
            for y in range(q):
                if y * y % q == rhs:
                    out.append(Point.affine(x, y))
        return out


@dataclass(frozen=True)
class GroupSpec:
    """A curve, a generator, and the generator's prime order, validated together."""

    curve: Curve
    generator: Point
    order: int

    def __post_init__(self):
        if self.generator.is_identity:
            raise ValueError("generator must not be the identity")
        if not self.curve.contains(self.generator):
            raise ValueError("generator is not on the curve")
        if not is_prime(self.order):
            raise ValueError(f"group order {self.order} is not prime")
        if not self.curve.scalar_mul(self.order, self.generator).is_identity:
            raise ValueError(f"{self.order} * generator is not the identity")

    def scalar_mul(self, r: int) -> Point:
        return self.curve.scalar_mul(r % self.order, self.generator)

    def element(self, r: int) -> Point:
        return self.scalar_mul(r)


def find_prime_order_curve(
    field: PrimeField,
    order_min: int,
    order_max: int,
    max_candidates: int | None = None,
) -> GroupSpec:
    """Deterministic (a, b) scan for the first nonsingular curve whose point
    count is prime and inside [order_min, order_max].

    The generator is the affine point with the smallest x, then smallest y.
    Any non-identity point generates a prime-order group.
    """
    q = field.p
    tried = 0
    for a in range(q):
        for b in range(q):
            if (4 * a**3 + 27 * b**2) % q == 0:
                continue
            tried += 1
            if max_candidates is not None and tried > max_candidates:
                raise BudgetExceededError(f"curve scan candidate cap {max_candidates} exceeded")
            curve = Curve(field, a, b)
            n = curve.group_order()
            if order_min <= n <= order_max and is_prime(n):
                gen = _first_affine_point(curve)
                return GroupSpec(curve, gen, n)
    raise BudgetExceededError(
        f"no curve over F_{q} with prime order in [{order_min}, {order_max}]"
    )


def _first_affine_point(curve: Curve) -> Point:
    q = curve.q
    for x in range(q):
        rhs = (x * x * x + curve.a * x + curve.b) % q
        for y in range(q):
            if y * y % q == rhs:
                return Point.affine(x, y)
    raise BudgetExceededError(f"curve over F_{q} has no affine points")


def point_to_text(pt: Point) -> str:
    """Point text format: 'x y' for affine points, 'O' for the identity."""
    if pt.is_identity:
        return IDENTITY_TOKEN
    return f"{pt.x} {pt.y}"


def point_from_text(text: str, curve: Curve) -> Point:
    text = text.strip()
    if text == IDENTITY_TOKEN:
        return Point.identity()
    parts = text.split()
    if len(parts) != 2:
        raise ValueError(f"point text must be 'x y' or '{IDENTITY_TOKEN}', got {text!r}")
    return curve.point(int(parts[0]), int(parts[1]))


def curve_to_text(curve: Curve) -> str:
    """Curve text format: 'q a b'."""
    return f"{curve.q} {curve.a} {curve.b}"


def curve_from_text(text: str) -> Curve:
    parts = text.split()
    if len(parts) != 3:
        raise ValueError(f"curve text must be 'q a b', got {text!r}")
    q, a, b = (int(part) for part in parts)
    return Curve(PrimeField(q), a, b)
