"""Integer points of Z^2 and rational linear forms on Q^2.

Every number is either a Python ``int`` or a :class:`fractions.Fraction`;
nothing here ever touches a float.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "Rational",
    "LatticePoint",
    "LinearForm",
    "as_rational",
    "primitive",
    "det",
    "linear_form_through",
]

Rational = Fraction


def as_rational(value):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: a float has already lost the exact value.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"malformed rational {value!r}") from None
        if q == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(p, q)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(r):
    """Lowest-terms ``"p/q"`` string, or ``"p"`` for integers."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True, order=True, slots=True)
class LatticePoint:
    x: int
    y: int

    def __post_init__(self):
        for c in (self.x, self.y):
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"lattice coordinates must be int, got {c!r}")

    def __add__(self, other):
        return LatticePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return LatticePoint(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return LatticePoint(-self.x, -self.y)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return LatticePoint(k * self.x, k * self.y)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.x
        yield self.y

    def is_zero(self):
        return self.x == 0 and self.y == 0

    def content(self):
        """gcd of the coordinates (0 for the origin)."""
        return gcd(self.x, self.y)

    def is_primitive(self):
        return self.content() == 1

    def tolist(self):
        return [self.x, self.y]


def _point(v):
    if isinstance(v, LatticePoint):
        return v
    x, y = v
    return LatticePoint(x, y)


def primitive(v):
    """The primitive lattice point on the ray through ``v``."""
    v = _point(v)
    g = v.content()
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return LatticePoint(v.x // g, v.y // g)


def det(u, v):
    """Oriented area ``u.x*v.y - u.y*v.x``; positive when v is counterclockwise of u."""
    u, v = _point(u), _point(v)
    return u.x * v.y - u.y * v.x


@dataclass(frozen=True, slots=True)
class LinearForm:
    """The linear function ``(x, y) -> a*x + b*y``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    def __call__(self, u):
        u = _point(u)
        return self.a * u.x + self.b * u.y

    def scaled(self, factor):
        factor = as_rational(factor)
        return LinearForm(self.a * factor, self.b * factor)

    def __str__(self):
        sign = "-" if self.b < 0 else "+"
        return f"{format_rational(self.a)}*x {sign} {format_rational(abs(self.b))}*y"


def linear_form_through(v1, t1, v2, t2):
    """The unique linear form L with L(v1) = t1 and L(v2) = t2.

    Cramer's rule on the 2x2 system; v1 and v2 need not be primitive.
    """
    v1, v2 = _point(v1), _point(v2)
    t1, t2 = as_rational(t1), as_rational(t2)
    d = det(v1, v2)
    if d == 0:
        raise ValueError("degenerate cone: generators collinear")
    a = (t1 * v2.y - t2 * v1.y) / d
    b = (v1.x * t2 - v2.x * t1) / d
    return LinearForm(a, b)
