from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import gauss_jordan, naive_mld
from mld_lab.cones import Cone2D, cone_from_continued_fraction
from mld_lab.lattice import LatticePoint as P
from mld_lab.mld import brute_force_minimum, toric_mld
from mld_lab.regone import (
    DualComplexShape,
    RegOneSystem,
    Shape,
    SingularSystemError,
    SystemSpecError,
    build_system,
    circle_case_toric,
    classify_dual_complex,
    complexity,
    geometric_model,
    interval_form,
    solve_exact,
    solve_system,
    two_anchor_pair,
)


def test_classify():
    shape, order = classify_dual_complex(True, [True, False, True])
    assert shape == DualComplexShape(Shape.CIRCLE, 3) and order == [1, 2, 0]
    shape, order = classify_dual_complex(False, [True, True, False])
    assert shape.variant is Shape.INTERVAL_ONE_ANCHOR and order == [2, 1, 0]
    assert shape.anchored == (1,)
    assert classify_dual_complex(False, [False, True, False])[0].anchored == (1, 3)
    assert classify_dual_complex(False, [True, True])[0].variant is Shape.INTERVAL_NO_ANCHOR


@pytest.mark.parametrize("closed, flags", [
    (False, [True]),
    (False, [False, False]),
    (True, [True, True, True]),
    (True, [False, False, True]),
    (False, [True, False, True]),
])
def test_classify_rejects(closed, flags):
    with pytest.raises(ValueError):
        classify_dual_complex(closed, flags)


def test_build_system_examples():
    A, b = build_system(RegOneSystem.circle((2, 2), 0))
    assert A == [[2, -1], [-1, 2]] and b == [1, 1]
    A, b = build_system(RegOneSystem.no_anchor((2, 2), 1, 1, 1, 1))
    assert A == [[2, -1], [-1, 2]] and b == [1, 1]
    A, b = build_system(RegOneSystem.circle((2, 2, 2), F(1, 2)))
    assert A == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    assert b == [F(1, 2), 0, F(1, 2)]


def test_solve_examples():
    sol = solve_system(RegOneSystem.circle((2, 2), 0))
    assert sol.alphas == (1, 1) and sol.mld == 1 and sol.argmin_index == 0
    assert sol.labels == (2, 3)
    sol = solve_system(RegOneSystem.circle((2, 2, 2), F(1, 2)))
    assert sol.alphas == (F(1, 2),) * 3
    sol = solve_system(RegOneSystem.one_anchor((2, 2), 1, 0, 1))
    assert sol.alphas == (1, 1)


def test_one_by_one_circle():
    # a lone curve meets the anchor twice, so the gap enters twice
    assert solve_system(RegOneSystem.circle((2,), 0)).alphas == (1,)
    assert solve_system(RegOneSystem.circle((3,), 0)).alphas == (F(2, 3),)


@pytest.mark.parametrize("weights, c1, v2, value", [
    ((2, 2), 0, (1, 3), 1),
    ((2, 2, 2), F(1, 2), (1, 4), F(1, 2)),
    ((3,), 0, (2, 3), F(2, 3)),
])
def test_circle_case_examples(weights, c1, v2, value):
    s = RegOneSystem.circle(weights, c1)
    p = circle_case_toric(s)
    assert p.cone == Cone2D(P(1, 0), P(*v2)) and p.b1 == p.b2 == c1
    assert solve_system(s).mld == toric_mld(p).value == value
    assert naive_mld((1, 0), v2, c1, c1)[0] == value


def test_geometric_examples():
    g = geometric_model(RegOneSystem.no_anchor((2, 2), 1, 1, 1, 1))
    assert g.values() == (1, 1)
    s = RegOneSystem.one_anchor((2, 2), 1, 0, 1)
    g = geometric_model(s)
    assert g.values() == solve_system(s).alphas
    assert g.sigma == Cone2D(P(1, 0), P(1, 3))


def test_two_anchor_pair():
    p = two_anchor_pair(RegOneSystem.two_anchors((2,), F(1, 2), 0))
    assert p.cone == Cone2D(P(1, 0), P(1, 2))
    assert toric_mld(p).value == F(3, 4)
    with pytest.raises(ValueError):
        build_system(RegOneSystem.two_anchors((2,), 0, 0))


def test_validation_names_fields():
    with pytest.raises(SystemSpecError) as err:
        RegOneSystem(Shape.CIRCLE, (2, 2), left_rhs=1).validate()
    assert set(err.value.fields) == {"anchor_coefficient", "left_rhs"}
    with pytest.raises(SystemSpecError) as err:
        RegOneSystem.no_anchor((2,), 1, 1, 1, 1).validate()
    assert "weights" in err.value.fields
    with pytest.raises(SystemSpecError):
        RegOneSystem.circle((2,), F(3, 2)).validate()
    with pytest.raises(SystemSpecError):
        RegOneSystem.one_anchor((2, 2), 0, 0, 1).validate()


def test_singular_system():
    with pytest.raises(SingularSystemError, match="not full rank"):
        solve_system(RegOneSystem.circle((1, 1), 0))
    with pytest.raises(SingularSystemError):
        solve_exact([[1, 2], [2, 4]], [1, 2])


@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(st.fractions(max_denominator=9), min_size=n, max_size=n),
    )
))
def test_solve_exact_matches_gauss_jordan(data):
    A, b = data
    expected = gauss_jordan(A, b)
    if expected is None:
        with pytest.raises(SingularSystemError):
            solve_exact(A, b)
    else:
        assert solve_exact(A, b) == expected


anchors = st.sampled_from([F(0), F(1, 3), F(1, 2), F(5, 6), F(1)])
rhs = st.sampled_from([F(0), F(1, 2), F(1), F(2), F(7, 3)])


@st.composite
def interval_systems(draw):
    weights = tuple(draw(st.lists(st.integers(1, 6), min_size=2, max_size=6)))
    if draw(st.booleans()):
        return RegOneSystem.one_anchor(weights, draw(st.integers(1, 4)), draw(anchors), draw(rhs))
    return RegOneSystem.no_anchor(weights, draw(st.integers(1, 4)), draw(st.integers(1, 4)), draw(rhs), draw(rhs))


@given(st.lists(st.integers(2, 6), min_size=1, max_size=6), anchors)
def test_circle_equivalence(weights, c1):
    s = RegOneSystem.circle(weights, c1)
    assert solve_system(s).mld == toric_mld(circle_case_toric(s)).value


@settings(max_examples=300)
@given(interval_systems())
def test_linear_form_reproduces_alphas(s):
    try:
        sol = solve_system(s)
    except SingularSystemError:
        A, b = build_system(s)
        assert gauss_jordan(A, b) is None
        return
    try:
        points, M = interval_form(s)
    except ValueError:
        # collinear end vectors: the form is not determined, nothing to compare
        return
    assert tuple(M(x) for x in points) == sol.alphas


@settings(max_examples=300)
@given(interval_systems())
def test_localization_on_convex_models(s):
    try:
        g = geometric_model(s)
        sol = solve_system(s)
    except (ValueError, SingularSystemError):
        assume(False)
    assert all(a >= 0 for a in sol.alphas)
    best = brute_force_minimum(g.sigma, g.form)
    assert best.value == min(g.form(u) for u in g.candidates())
    assert sol.mld >= best.value


def test_complexity():
    assert complexity(2, 0, [1, 1]).value == 0 and not complexity(2, 0, [1, 1]).negative
    assert complexity(3, 1, [1, 1, 1, 1]).value == 0
    c = complexity(2, 0, [1, 1, 1])
    assert c.value == -1 and c.negative and c.note
    assert complexity(2, 1, ["1/2"]).value == F(5, 2)
    with pytest.raises(ValueError):
        complexity(0, 0, [])
