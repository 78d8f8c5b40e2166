"""Two-dimensional rational cones and their Hirzebruch-Jung subdivisions."""

from dataclasses import dataclass
from functools import lru_cache

from .lattice import LatticePoint, det, primitive, _point

__all__ = [
    "Cone2D",
    "ChainDecomposition",
    "cone_index",
    "regular_decomposition",
    "cone_from_continued_fraction",
    "chain_from_weights",
    "contains_relint",
    "hirzebruch_jung",
]


@dataclass(frozen=True, slots=True)
class Cone2D:
    """Strongly convex cone spanned by two primitive lattice vectors.

    Generators are normalized on construction: each is divided by its
    content, and the pair is swapped if ``det(v1, v2) < 0`` so that v2 is
    always counterclockwise of v1.
    """

    v1: LatticePoint
    v2: LatticePoint

    def __post_init__(self):
        v1, v2 = primitive(self.v1), primitive(self.v2)
        d = det(v1, v2)
        if d == 0:
            raise ValueError("degenerate cone: generators collinear")
        if d < 0:
            v1, v2 = v2, v1
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)

    @property
    def index(self):
        return det(self.v1, self.v2)

    def is_smooth(self):
        return self.index == 1


def cone_index(c):
    """Order of the cyclic quotient singularity; 1 exactly for smooth cones."""
    return det(c.v1, c.v2)


def contains_relint(c, u):
    u = _point(u)
    if u.is_zero():
        raise ValueError("zero vector is not a cone point")
    return det(c.v1, u) > 0 and det(u, c.v2) > 0


@dataclass(frozen=True, slots=True)
class ChainDecomposition:
    """A regular subdivision of ``cone`` by the chain w_1..w_c.

    ``weights[j]`` is the self-intersection magnitude m attached to
    ``chain[j]``: the neighbours of chain[j] sum to m * chain[j].
    """

    cone: Cone2D
    chain: tuple
    weights: tuple

    def vectors(self):
        """u_0 = v1, u_1..u_c = chain, u_{c+1} = v2."""
        return (self.cone.v1, *self.chain, self.cone.v2)

    def determinants(self):
        us = self.vectors()
        return [det(us[j], us[j + 1]) for j in range(len(us) - 1)]

    def check(self):
        """Raise AssertionError if any structural invariant fails."""
        us = self.vectors()
        assert len(self.weights) == len(self.chain)
        for j, d in enumerate(self.determinants()):
            assert d == 1, f"det(u{j}, u{j + 1}) = {d}"
        for j, m in enumerate(self.weights, start=1):
            assert us[j - 1] + us[j + 1] == m * us[j], f"recurrence fails at u{j}"
        for w in self.chain:
            assert contains_relint(self.cone, w), f"{w} not interior"
        return True


def _ext_gcd(a, b):
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _next_chain_point(u, v):
    """Interior lattice point w with det(u, w) = 1 and 0 < det(w, v) < det(u, v)."""
    n = det(u, v)
    _, s, t = _ext_gcd(u.x, u.y)
    w = LatticePoint(-t, s)
    # the det(u, .) = 1 line is w + Z*u; slide along it into the cone
    p = det(w, v)
    j = -((p - 1) // n)
    return w + j * u


@lru_cache(maxsize=8192)
def regular_decomposition(c):
    """Minimal regular subdivision of ``c`` (Hirzebruch-Jung chain).

    Repeatedly inserts the lattice point adjacent to the current first
    ray, i.e. the one with determinant 1 against it, until the last
    subcone is unimodular.
    """
    chain = []
    u = c.v1
    while det(u, c.v2) > 1:
        u = _next_chain_point(u, c.v2)
        chain.append(u)
    us = (c.v1, *chain, c.v2)
    weights = tuple(det(us[j - 1], us[j + 1]) for j in range(1, len(us) - 1))
    return ChainDecomposition(c, tuple(chain), weights)


def chain_from_weights(weights, start=(LatticePoint(1, 0), LatticePoint(1, 1))):
    """Vectors u_0, u_1, ..., u_{c+1} with u_{j+1} = m_j u_j - u_{j-1}.

    An empty weight list gives just the two starting vectors.
    """
    u_prev, u = start
    out = [u_prev, u]
    for m in weights:
        u_prev, u = u, m * u - u_prev
        out.append(u)
    return out


def cone_from_continued_fraction(weights):
    """The cone and chain of the continued fraction [m_1, ..., m_c].

    Uses the frame u_0 = (1, 0), u_1 = (1, 1).  Entries equal to 1 are
    accepted as long as the resulting cone is strictly convex; in that
    case the chain is regular but not minimal.
    """
    weights = tuple(weights)
    if not weights:
        raise ValueError("continued fraction needs at least one entry")
    for m in weights:
        if isinstance(m, bool) or not isinstance(m, int):
            raise TypeError(f"continued fraction entries must be int, got {m!r}")
        if m <= 0:
            raise ValueError(f"continued fraction entries must be positive, got {m}")
    us = chain_from_weights(weights)
    if det(us[0], us[-1]) <= 0:
        raise ValueError(f"{list(weights)} does not define a strictly convex cone")
    decomposition = ChainDecomposition(Cone2D(us[0], us[-1]), tuple(us[1:-1]), weights)
    try:
        decomposition.check()
    except AssertionError as exc:
        raise ValueError(f"{list(weights)} does not define a regular chain: {exc}") from None
    return decomposition


def hirzebruch_jung(n, q):
    """Expansion n/q = m_1 - 1/(m_2 - 1/(...)) for 0 < q < n coprime."""
    if not 0 < q < n:
        raise ValueError("need 0 < q < n")
    out = []
    while q:
        m = -(-n // q)
        out.append(m)
        n, q = q, m * q - n
    return out
