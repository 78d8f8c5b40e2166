"""Minimal log discrepancies of toric surface sub-pairs.

For the affine toric surface of a cone with boundary b1*T1 + b2*T2, the
mld at the torus fixed point is the minimum over interior lattice points
of the linear form L with L(v1) = 1 - b1, L(v2) = 1 - b2.  The fast route
reads the minimum off the Hirzebruch-Jung chain; :func:`brute_force_mld`
enumerates lattice points directly and never looks at the chain.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cones import Cone2D, _ext_gcd, regular_decomposition
from .lattice import LatticePoint, as_rational, det, linear_form_through

__all__ = [
    "ToricPair",
    "MldResult",
    "MinusInfinity",
    "MINUS_INFINITY",
    "log_discrepancy_form",
    "minimize_over_halfopen",
    "form_mld",
    "toric_mld",
    "brute_force_minimum",
    "brute_force_mld",
    "kth_mld",
    "kth_mlds",
    "rescale_pair",
]


class MinusInfinity:
    """Result marker for pairs whose log discrepancies are unbounded below."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MINUS_INFINITY"

    def __reduce__(self):
        return (MinusInfinity, ())


MINUS_INFINITY = MinusInfinity()


@dataclass(frozen=True, slots=True)
class ToricPair:
    """The germ (X(cone), b1*T1 + b2*T2; x0); T_i is the divisor of ray v_i."""

    cone: Cone2D
    b1: Fraction
    b2: Fraction

    def __post_init__(self):
        b1, b2 = as_rational(self.b1), as_rational(self.b2)
        if b1 > 1 or b2 > 1:
            raise ValueError(f"boundary coefficients must be <= 1, got {b1}, {b2}")
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)

    @classmethod
    def from_generators(cls, v1, v2, b1, b2):
        """Build from raw generators, keeping b_i attached to v_i if the cone reorients."""
        cone = Cone2D(LatticePoint(*v1), LatticePoint(*v2))
        if det(LatticePoint(*v1), LatticePoint(*v2)) < 0:
            b1, b2 = b2, b1
        return cls(cone, b1, b2)


@dataclass(frozen=True, slots=True)
class MldResult:
    value: Fraction
    witness: LatticePoint

    @property
    def lc(self):
        return self.value >= 0

    @property
    def klt(self):
        return self.value > 0


def log_discrepancy_form(p):
    return linear_form_through(p.cone.v1, 1 - p.b1, p.cone.v2, 1 - p.b2)


def minimize_over_halfopen(c, L):
    """Minimum of a positive form over the cone minus the ray of v1.

    Only the chain points and v2 are inspected; ties go to the earliest
    candidate in chain order.
    """
    if L(c.v1) <= 0 or L(c.v2) <= 0:
        raise ValueError("form not positive on cone")
    best = None
    for u in (*regular_decomposition(c).chain, c.v2):
        value = L(u)
        if best is None or value < best[0]:
            best = (value, u)
    return best


def form_mld(c, L):
    """Infimum of L over the interior lattice points of ``c``."""
    if L(c.v1) < 0 or L(c.v2) < 0:
        return MINUS_INFINITY
    chain = regular_decomposition(c).chain
    candidates = chain if chain else (c.v1 + c.v2,)
    value, witness = min((L(u), u) for u in candidates)
    return MldResult(value, witness)


def toric_mld(p):
    return form_mld(p.cone, log_discrepancy_form(p))


def _scaled_form(c, L):
    """Integers (A, B, D) with L(v1) = A/D and L(v2) = B/D."""
    l1, l2 = L(c.v1), L(c.v2)
    D = lcm(l1.denominator, l2.denominator)
    return int(l1 * D), int(l2 * D), D


def _cone_points(c, A, B, bound, p_start=1):
    """Lattice points u of the cone with det(u, v2) >= p_start, det(v1, u) > 0
    and p*A + q*B <= bound, where p = det(u, v2), q = det(v1, u).

    Yields (p*A + q*B, u).  A coordinate whose weight is zero is only
    swept over one period, since translating by the corresponding
    generator leaves the value unchanged.
    """
    v1, v2 = c.v1, c.v2
    n = det(v1, v2)
    _, s, t = _ext_gcd(v2.x, v2.y)
    w0 = LatticePoint(t, -s)  # det(w0, v2) = 1
    k = det(v1, w0)
    p_stop = bound // A if A else p_start + n - 1
    q_stop_all = n if B == 0 else None
    for p in range(p_start, p_stop + 1):
        q = (p * k) % n or n
        q_stop = q_stop_all if q_stop_all is not None else (bound - p * A) // B
        while q <= q_stop:
            j = (q - p * k) // n
            yield p * A + q * B, p * w0 + j * v2
            q += n


def brute_force_minimum(c, L, halfopen=False):
    """Exhaustive minimum of L over interior lattice points of ``c``.

    With ``halfopen=True`` the ray through v2 is included (the ray through
    v1 never is), which requires L strictly positive on both generators.
    Ties are broken lexicographically on the witness.
    """
    l1, l2 = L(c.v1), L(c.v2)
    if halfopen and (l1 <= 0 or l2 <= 0):
        raise ValueError("form not positive on cone")
    if l1 < 0 or l2 < 0 or L(c.v1 + c.v2) < 0:
        return MINUS_INFINITY
    if l1 == 0 and l2 == 0:
        return MldResult(Fraction(0), c.v1 + c.v2)
    A, B, _ = _scaled_form(c, L)
    n = det(c.v1, c.v2)
    # v1 + v2 sits at p = q = n, so its value bounds the search region
    bound = n * (A + B)
    best = None
    for value, u in _cone_points(c, A, B, bound, p_start=0 if halfopen else 1):
        if best is None or (value, u) < best:
            best = (value, u)
    witness = best[1]
    return MldResult(L(witness), witness)


def brute_force_mld(p):
    return brute_force_minimum(p.cone, log_discrepancy_form(p))


def kth_mlds(p, k):
    """The k smallest values of L over primitive interior points, with multiplicity."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    c = p.cone
    L = log_discrepancy_form(p)
    if toric_mld(p) is MINUS_INFINITY:
        raise ValueError("pair is not log canonical")
    l1, l2 = L(c.v1), L(c.v2)
    n = c.index
    if l1 == 0 or l2 == 0:
        # the points with det(u, v_i) = 1 along a zero-valued ray are all
        # primitive, infinitely many, and realise the global minimum
        return [max(l1, l2) / n] * k
    A, B, D = _scaled_form(c, L)
    bound = n * (A + B)
    while True:
        values = sorted(
            value for value, u in _cone_points(c, A, B, bound) if u.is_primitive()
        )
        if len(values) >= k:
            break
        bound *= 2
    # u = (p*v1 + q*v2)/n, so L(u) = (p*A + q*B) / (n*D)
    return [Fraction(v, n * D) for v in values[:k]]


def kth_mld(p, k):
    return kth_mlds(p, k)[-1]


def rescale_pair(p, M):
    """Pair with coefficients 1 - (1 - b_i)/(M + 1); its mld is mld(p)/(M + 1)."""
    M = as_rational(M)
    if M < 0:
        raise ValueError("rescaling constant must be non-negative")
    return ToricPair(
        p.cone, 1 - (1 - p.b1) / (M + 1), 1 - (1 - p.b2) / (M + 1)
    )
