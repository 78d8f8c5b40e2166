"""Linear systems for log discrepancies along a regularity-one dual complex.

The dual complex of a regularity-one dlt modification is a circle or an
interval.  Intersecting the difference of the two log pull-backs with one
curve per component gives a square tridiagonal system in the unknown log
discrepancies alpha_i.  Its solution is cross-checked against a planar
model: a chain of lattice vectors x_i and a linear form M with
M(x_i) = alpha_i.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .cones import Cone2D, chain_from_weights, cone_from_continued_fraction, contains_relint, regular_decomposition
from .lattice import LatticePoint, as_rational, det, linear_form_through
from .mld import ToricPair

__all__ = [
    "Shape",
    "DualComplexShape",
    "classify_dual_complex",
    "RegOneSystem",
    "SystemSpecError",
    "SingularSystemError",
    "SystemSolution",
    "GeometricModel",
    "build_system",
    "solve_system",
    "solve_exact",
    "circle_case_toric",
    "two_anchor_pair",
    "geometric_model",
    "interval_form",
    "complexity",
    "Complexity",
]


class Shape(enum.Enum):
    # (i) interval, both endpoints map onto positive-dimensional centers
    INTERVAL_TWO_ANCHORS = "interval-two-anchors"
    # (ii) circle, E_1 maps onto a positive-dimensional center
    CIRCLE = "circle"
    # (iii) interval, only E_1 maps onto a positive-dimensional center
    INTERVAL_ONE_ANCHOR = "interval-one-anchor"
    # (iv) interval, every E_i maps onto the point
    INTERVAL_NO_ANCHOR = "interval-no-anchor"


_ANCHORS = {
    Shape.INTERVAL_TWO_ANCHORS: "both",
    Shape.CIRCLE: "first",
    Shape.INTERVAL_ONE_ANCHOR: "first",
    Shape.INTERVAL_NO_ANCHOR: "none",
}


@dataclass(frozen=True)
class DualComplexShape:
    variant: Shape
    vertex_count: int

    def __post_init__(self):
        object.__setattr__(self, "variant", Shape(self.variant))
        if self.vertex_count < 2:
            raise ValueError(f"{self.variant.value} needs at least 2 vertices, got {self.vertex_count}")

    @property
    def anchored(self):
        """1-based labels of the vertices whose center strictly contains the point."""
        kind = _ANCHORS[self.variant]
        if kind == "both":
            return (1, self.vertex_count)
        if kind == "first":
            return (1,)
        return ()

    @property
    def is_circle(self):
        return self.variant is Shape.CIRCLE


def classify_dual_complex(closed, maps_to_point):
    """Match a dual complex against the four regularity-one cases.

    ``closed`` says whether the complex is a circle; ``maps_to_point[i]``
    whether E_{i+1} maps onto the point x.  Returns the shape together
    with the vertex order (0-based) putting it in normal form, e.g. the
    anchored vertex first.
    """
    flags = [bool(f) for f in maps_to_point]
    r = len(flags)
    if r < 2:
        raise ValueError("a regularity-one dual complex has at least 2 vertices")
    if not any(flags):
        raise ValueError("no component maps onto the point")
    anchors = [i for i, f in enumerate(flags) if not f]
    if closed:
        if len(anchors) != 1:
            raise ValueError(f"circle must have exactly one anchored vertex, found {len(anchors)}")
        a = anchors[0]
        return DualComplexShape(Shape.CIRCLE, r), [(a + i) % r for i in range(r)]
    order = list(range(r))
    if not anchors:
        return DualComplexShape(Shape.INTERVAL_NO_ANCHOR, r), order
    if any(a not in (0, r - 1) for a in anchors):
        raise ValueError("an interior vertex of the interval maps onto a positive-dimensional center")
    if len(anchors) == 2:
        return DualComplexShape(Shape.INTERVAL_TWO_ANCHORS, r), order
    if anchors == [r - 1]:
        order.reverse()
    return DualComplexShape(Shape.INTERVAL_ONE_ANCHOR, r), order


class SystemSpecError(ValueError):
    def __init__(self, message, fields=()):
        super().__init__(message)
        self.fields = tuple(fields)


class SingularSystemError(ArithmeticError):
    pass


_SINGULAR_MESSAGE = (
    "system not full rank: the intersection matrix of a valid extraction is "
    "always invertible, so this input cannot come from one"
)

# field name -> which shapes use it
_USAGE = {
    "left_coupling": {Shape.INTERVAL_NO_ANCHOR},
    "right_coupling": {Shape.INTERVAL_ONE_ANCHOR, Shape.INTERVAL_NO_ANCHOR},
    "anchor_coefficient": {Shape.CIRCLE, Shape.INTERVAL_ONE_ANCHOR, Shape.INTERVAL_TWO_ANCHORS},
    "right_anchor_coefficient": {Shape.INTERVAL_TWO_ANCHORS},
    "left_rhs": {Shape.INTERVAL_NO_ANCHOR},
    "right_rhs": {Shape.INTERVAL_ONE_ANCHOR, Shape.INTERVAL_NO_ANCHOR},
}

_MIN_WEIGHTS = {
    Shape.CIRCLE: 1,
    Shape.INTERVAL_ONE_ANCHOR: 1,
    Shape.INTERVAL_NO_ANCHOR: 2,
    Shape.INTERVAL_TWO_ANCHORS: 0,
}


@dataclass(frozen=True)
class RegOneSystem:
    """Intersection data for one regularity-one configuration.

    ``weights`` holds the self-intersection magnitudes of the curves that
    get an equation: m_2..m_r for a circle or a one-anchor interval,
    m_1..m_r for an interval with no anchor, and the interior chain
    m_2..m_{r-1} for an interval with two anchors.  Couplings and
    right-hand sides are taken already multiplied by N!, so every entry
    of the matrix is an integer.  ``complement_index`` is carried for
    bookkeeping only.
    """

    shape: Shape
    weights: tuple
    left_coupling: int = None
    right_coupling: int = None
    anchor_coefficient: Fraction = None
    right_anchor_coefficient: Fraction = None
    left_rhs: Fraction = None
    right_rhs: Fraction = None
    complement_index: int = 1

    def __post_init__(self):
        object.__setattr__(self, "shape", Shape(self.shape))
        object.__setattr__(self, "weights", tuple(self.weights))
        for name in ("anchor_coefficient", "right_anchor_coefficient", "left_rhs", "right_rhs"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, as_rational(value))

    @classmethod
    def circle(cls, weights, c1, **kw):
        return cls(Shape.CIRCLE, weights, anchor_coefficient=c1, **kw)

    @classmethod
    def one_anchor(cls, weights, right_coupling, c1, beta_r, **kw):
        return cls(Shape.INTERVAL_ONE_ANCHOR, weights, right_coupling=right_coupling,
                   anchor_coefficient=c1, right_rhs=beta_r, **kw)

    @classmethod
    def no_anchor(cls, weights, left_coupling, right_coupling, beta_1, beta_r, **kw):
        return cls(Shape.INTERVAL_NO_ANCHOR, weights, left_coupling=left_coupling,
                   right_coupling=right_coupling, left_rhs=beta_1, right_rhs=beta_r, **kw)

    @classmethod
    def two_anchors(cls, weights, c1, cr, **kw):
        return cls(Shape.INTERVAL_TWO_ANCHORS, weights, anchor_coefficient=c1,
                   right_anchor_coefficient=cr, **kw)

    @property
    def dual_complex(self):
        extra = {Shape.INTERVAL_NO_ANCHOR: 0, Shape.INTERVAL_TWO_ANCHORS: 2}.get(self.shape, 1)
        return DualComplexShape(self.shape, len(self.weights) + extra)

    @property
    def unknown_labels(self):
        """1-based vertex labels of the alpha unknowns."""
        r = self.dual_complex.vertex_count
        first = 1 if self.shape is Shape.INTERVAL_NO_ANCHOR else 2
        last = r - 1 if self.shape is Shape.INTERVAL_TWO_ANCHORS else r
        return tuple(range(first, last + 1))

    def validate(self):
        bad = []
        problems = []
        for name, users in _USAGE.items():
            present = getattr(self, name) is not None
            if self.shape in users and not present:
                bad.append(name)
                problems.append(f"{name} is required")
            elif self.shape not in users and present:
                bad.append(name)
                problems.append(f"{name} is not used by this shape")
        if len(self.weights) < _MIN_WEIGHTS[self.shape]:
            bad.append("weights")
            problems.append(f"needs at least {_MIN_WEIGHTS[self.shape]} weights")
        for m in self.weights:
            if isinstance(m, bool) or not isinstance(m, int) or m < 1:
                bad.append("weights")
                problems.append(f"weight {m!r} is not a positive integer")
                break
        for name in ("left_coupling", "right_coupling"):
            c = getattr(self, name)
            if c is not None and (isinstance(c, bool) or not isinstance(c, int) or c < 1):
                bad.append(name)
                problems.append(f"{name} must be a positive integer")
        for name in ("anchor_coefficient", "right_anchor_coefficient"):
            c = getattr(self, name)
            if c is not None and not 0 <= c <= 1:
                bad.append(name)
                problems.append(f"{name} must lie in [0, 1]")
        for name in ("left_rhs", "right_rhs"):
            beta = getattr(self, name)
            if beta is not None and beta < 0:
                bad.append(name)
                problems.append(f"{name} must be non-negative")
        if not isinstance(self.complement_index, int) or self.complement_index < 1:
            bad.append("complement_index")
            problems.append("complement_index must be a positive integer")
        if bad:
            raise SystemSpecError(
                f"inconsistent {self.shape.value} system: " + "; ".join(problems), bad
            )
        return self


def build_system(s):
    """Integer tridiagonal matrix (as Fractions) and exact right-hand side."""
    s.validate()
    w = s.weights
    n = len(w)
    if s.shape is Shape.INTERVAL_TWO_ANCHORS:
        raise SystemSpecError(
            "an interval with two anchors has no linear system; use two_anchor_pair", ["shape"]
        )
    A = [[Fraction(0)] * n for _ in range(n)]
    for i, m in enumerate(w):
        A[i][i] = Fraction(m)
        if i > 0:
            A[i][i - 1] = Fraction(-1)
        if i < n - 1:
            A[i][i + 1] = Fraction(-1)
    b = [Fraction(0)] * n

    if s.shape is Shape.CIRCLE:
        gap = 1 - s.anchor_coefficient
        # both ends of the cycle meet E_1; with one unknown they coincide
        b[0] += gap
        b[-1] += gap
    elif s.shape is Shape.INTERVAL_ONE_ANCHOR:
        gap = 1 - s.anchor_coefficient
        if n == 1:
            # C_r meets E_1 directly with multiplicity c_{r-1}
            b[0] = s.right_rhs + s.right_coupling * gap
        else:
            A[-1][-2] = Fraction(-s.right_coupling)
            b[0] = gap
            b[-1] = s.right_rhs
    else:
        A[0][1] = Fraction(-s.left_coupling)
        A[-1][-2] = Fraction(-s.right_coupling)
        b[0] = s.left_rhs
        b[-1] = s.right_rhs
    return A, b


def solve_exact(A, b):
    """Solve A x = b exactly by Bareiss fraction-free elimination.

    Raises SingularSystemError when A is singular.
    """
    n = len(A)
    D = lcm(*(Fraction(v).denominator for row in A for v in row), *(Fraction(v).denominator for v in b))
    M = [[int(Fraction(v) * D) for v in row] + [int(Fraction(rhs) * D)] for row, rhs in zip(A, b)]
    prev = 1
    for k in range(n):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    break
            else:
                raise SingularSystemError(_SINGULAR_MESSAGE)
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(M[i][n]) - sum(M[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / M[i][i]
    return x


@dataclass(frozen=True)
class SystemSolution:
    alphas: tuple
    mld: Fraction
    argmin_index: int
    labels: tuple = field(default=(), compare=False)


def solve_system(s):
    A, b = build_system(s)
    alphas = solve_exact(A, b)
    residual = [sum(a * x for a, x in zip(row, alphas)) - rhs for row, rhs in zip(A, b)]
    if any(residual):
        raise AssertionError(f"non-zero residual {residual}")
    mld = min(alphas)
    return SystemSolution(tuple(alphas), mld, alphas.index(mld), s.unknown_labels)


def circle_case_toric(s):
    """Toric pair (X(sigma), c1*T1 + c1*T2) of the circle's continued fraction."""
    if s.shape is not Shape.CIRCLE:
        raise ValueError(f"circle_case_toric needs a circle system, got {s.shape.value}")
    s.validate()
    cone = cone_from_continued_fraction(s.weights).cone
    return ToricPair(cone, s.anchor_coefficient, s.anchor_coefficient)


def two_anchor_pair(s):
    """Toric pair for case (i): the interior chain's cone with coefficients c1, c_r."""
    if s.shape is not Shape.INTERVAL_TWO_ANCHORS:
        raise ValueError(f"two_anchor_pair needs an interval with two anchors, got {s.shape.value}")
    s.validate()
    us = chain_from_weights(s.weights)
    return ToricPair(Cone2D(us[0], us[-1]), s.anchor_coefficient, s.right_anchor_coefficient)


@dataclass(frozen=True)
class GeometricModel:
    """Planar realisation of an interval system.

    ``points`` are the x_i carrying the unknowns, in order; ``form`` is M;
    ``sigma`` is the cone Sigma; ``end_cones`` are the cones between the
    outermost x_i and the modified end vectors y.
    """

    sigma: Cone2D
    points: tuple
    form: object
    ends: tuple
    end_cones: tuple

    def values(self):
        return tuple(self.form(x) for x in self.points)

    def candidates(self):
        """x_i together with the chain points of every end cone."""
        out = list(self.points)
        for tau in self.end_cones:
            out.extend(regular_decomposition(tau).chain)
        return out


def _interval_vectors(s):
    """(x_1..x_r, y_left or None, y_right, anchor vector or None, unknown points)."""
    w = s.weights
    if s.shape is Shape.INTERVAL_NO_ANCHOR:
        xs = chain_from_weights(w[1:-1])
        y1 = w[0] * xs[0] - s.left_coupling * xs[1]
        y2 = w[-1] * xs[-1] - s.right_coupling * xs[-2]
        return xs, y1, y2, xs
    if s.shape is Shape.INTERVAL_ONE_ANCHOR:
        xs = chain_from_weights(w[:-1])
        y2 = w[-1] * xs[-1] - s.right_coupling * xs[-2]
        return xs, None, y2, xs[1:]
    raise ValueError(f"geometric_model needs an interval system, got {s.shape.value}")


def interval_form(s):
    """The unknown points x_i and the form M fixed by the two end conditions."""
    s.validate()
    xs, y1, y2, points = _interval_vectors(s)
    try:
        if y1 is None:
            M = linear_form_through(xs[0], 1 - s.anchor_coefficient, y2, s.right_rhs)
        else:
            M = linear_form_through(y1, s.left_rhs, y2, s.right_rhs)
    except ValueError:
        raise ValueError("degenerate geometric model: end vectors are collinear") from None
    return tuple(points), M


def geometric_model(s):
    points, M = interval_form(s)
    xs, y1, y2, _ = _interval_vectors(s)
    left = xs[0] if y1 is None else y1
    if det(left, y2) <= 0:
        raise ValueError("degenerate geometric model: end vectors do not span a strictly convex cone")
    sigma = Cone2D(left, y2)
    for x in points:
        if not contains_relint(sigma, x):
            raise ValueError(f"degenerate geometric model: {x} is not interior to Sigma")
    end_cones = [Cone2D(xs[-1], y2)]
    if y1 is not None:
        end_cones.insert(0, Cone2D(y1, xs[0]))
    ends = (y2,) if y1 is None else (y1, y2)
    return GeometricModel(sigma, points, M, ends, tuple(end_cones))


@dataclass(frozen=True)
class Complexity:
    value: Fraction
    negative: bool

    @property
    def note(self):
        if self.negative:
            return "negative complexity: not the boundary of a log canonical pair"
        return ""


def complexity(dim, local_picard, coefficients):
    """dim X + rho(X_x) - sum of boundary coefficients."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if local_picard < 0:
        raise ValueError("local Picard rank is non-negative")
    value = Fraction(dim + local_picard) - sum((as_rational(b) for b in coefficients), Fraction(0))
    return Complexity(value, value < 0)
