import random

import pytest

from CATALOG.Catalog import CATALOG_NAMES, load
from COMMON.Errors import NotInvariantError, ParityError, PreconditionError, ShapeError
from CONTROL.Closure import (
    ad_apply,
    ad_hull,
    bracket_containment_check,
    hull_by_powers,
    is_bracket_closed,
    lsa_span,
    semidirect_bracket,
)
from CONTROL.Drift import DriftAction, as_drift
from GRASSMANN.Grassmann import Parity
from LSA.Algebra import AlgebraElement, LieSuperalgebra
from LSA.Subspace import subspace_span
from SUPERMAT.SuperMatrix import SuperMatrix


@pytest.fixture(scope="module")
def osp():
    return load("osp(2|1)").algebra


@pytest.fixture(scope="module")
def sl21():
    return load("sl(2|1)").algebra


def _x(osp):
    return osp.combination({"Y2": 1, "Y3": 1})


def _catalog_systems():
    return [(s.name, s.spec) for nm in CATALOG_NAMES for s in load(nm).systems]


# ---- drift ----
def test_matrix_and_element_drifts_agree(sl21):
    e21 = SuperMatrix.unit(2, 1, 2, 1)
    assert DriftAction.from_matrix(e21, sl21).columns == DriftAction.from_element(sl21.element("Y4")).columns


def test_drift_rejections(osp):
    with pytest.raises(ParityError):
        DriftAction.from_element(osp.element("Xi1"))
    with pytest.raises(NotInvariantError):
        DriftAction.from_matrix(SuperMatrix.unit(2, 1, 1, 1), osp)
    with pytest.raises(PreconditionError):
        as_drift(SuperMatrix.identity(2, 1))
    with pytest.raises(PreconditionError):
        DriftAction.from_matrix(SuperMatrix.identity(1, 1), LieSuperalgebra.abelian(1, 1))


def test_linear_map_drift():
    A = SuperMatrix(2, 1, [[0, 1, 0], [0, 0, 0], [0, 0, 3]])
    drift = DriftAction.from_linear_map(A)
    g = drift.algebra
    assert g.dim == (2, 1)
    assert drift.apply(g.element("Y2")) == g.element("Y1")
    assert drift.apply(g.element("Xi1")) == g.element("Xi1") * 3
    with pytest.raises(ParityError):
        DriftAction.from_linear_map(SuperMatrix(1, 1, [[0, 1], [0, 0]]))
    with pytest.raises(ShapeError):
        DriftAction.from_linear_map(A, LieSuperalgebra.abelian(1, 2))


def test_linear_map_drift_needs_an_abelian_algebra(osp):
    A = SuperMatrix.diag(3, 2, [1, 2, 3, 4, 5])
    with pytest.raises(PreconditionError):
        DriftAction.from_linear_map(A, osp)
    assert DriftAction.from_linear_map(A, LieSuperalgebra.abelian(3, 2)).algebra.dim == (3, 2)


# ---- ad powers ----
def test_ad_powers_on_osp(osp):
    X = _x(osp)
    assert ad_apply(X, osp.element("Xi1"), 1) == -osp.element("Xi2")
    assert ad_apply(X, osp.element("Xi1"), 2) == osp.element("Xi1")
    assert ad_apply(X, osp.element("Y2"), 1) == osp.element("Y1") * -2
    assert ad_apply(X, osp.element("Y2"), 0) == osp.element("Y2")
    with pytest.raises(PreconditionError):
        ad_apply(X, osp.element("Y2"), -1)


def test_ad_powers_from_matrix_drift(osp):
    drift = as_drift(SuperMatrix(2, 1, [[0, 1, 0], [1, 0, 0], [0, 0, 0]]), osp)
    assert ad_apply(drift, osp.element("Xi1"), 1) == -osp.element("Xi2")


# ---- closure ----
def test_bracket_closedness(osp, sl21):
    assert is_bracket_closed(subspace_span([osp.element("Y2"), osp.element("Xi1")]))
    assert not is_bracket_closed(subspace_span([sl21.element("Xi1"), sl21.element("Xi2")]))
    assert is_bracket_closed(lsa_span([sl21.element("Xi1"), sl21.element("Xi2")]))


def test_hull_of_example3(osp):
    h = lsa_span([osp.element("Y2"), osp.element("Xi1")])
    hull, trace = ad_hull(_x(osp), h)
    assert hull.dim == (3, 2)
    assert trace.terminated_at == 2
    rows = trace.as_rows()
    assert rows[0]["step"] == 0 and rows[0]["dim"] == [1, 1]
    assert rows[0]["added"] == [str(v) for v in h.elements()]
    assert rows[1]["step"] == 1 and rows[1]["dim"] == [2, 2]
    assert [r["step"] for r in rows] == [0, 1, 2, 3]
    assert trace.closure_dim == (3, 2)


def test_hull_of_example2(sl21):
    h = lsa_span([sl21.element("Y2"), sl21.element("Xi1"), sl21.element("Xi2")])
    hull, _ = ad_hull(SuperMatrix.unit(2, 1, 2, 1), h)
    assert hull.is_full


def test_hull_needs_closed_input(sl21):
    with pytest.raises(PreconditionError):
        ad_hull(sl21.element("Y4"), subspace_span([sl21.element("Xi1"), sl21.element("Xi2")]))


@pytest.mark.parametrize("name,spec", _catalog_systems())
def test_hull_matches_direct_powers(name, spec):
    g = spec.algebra
    hull, _ = ad_hull(spec.drift_action, lsa_span(spec.controls, g))
    assert hull == hull_by_powers(spec.drift_action, spec.controls, g.total_dim - 1, g)
    assert is_bracket_closed(hull)
    for v in hull.elements():
        assert hull.contains(spec.drift_action.apply(v))


def _random_homogeneous(rng, g, parity):
    pool = [e for e in g.basis_elements() if e.parity == parity]
    v = g.zero()
    for e in rng.sample(pool, 2):
        v = v + e * rng.randint(-2, 2)
    return v


def test_random_hulls_in_sl21(sl21):
    rng = random.Random(13)
    d = sl21.total_dim
    for _ in range(50):
        X = _random_homogeneous(rng, sl21, Parity.EVEN)
        gens = [_random_homogeneous(rng, sl21, rng.choice((Parity.EVEN, Parity.ODD))) for _ in range(rng.randint(1, 2))]
        hull, trace = ad_hull(X, lsa_span(gens, sl21))
        assert hull == hull_by_powers(X, gens, d - 1, sl21)
        assert trace.terminated_at <= d
        assert is_bracket_closed(hull)
        for v in hull.elements():
            assert hull.contains(ad_apply(X, v, 1))


def test_zero_drift_hull_is_the_span(osp):
    h = lsa_span([osp.element("Y2"), osp.element("Xi1")])
    hull, trace = ad_hull(osp.zero(), h)
    assert hull == h
    assert trace.terminated_at == 0
    assert [(s.index, s.dim) for s in trace.steps] == [(0, (1, 1)), (1, (1, 1))]


# ---- semidirect bracket ----
def test_semidirect_bracket(osp):
    X, zero = _x(osp), osp.zero()
    value = semidirect_bracket(X, (zero, 1), (osp.element("Xi1"), 0))
    assert isinstance(value, AlgebraElement)
    assert value == -osp.element("Xi2")
    assert semidirect_bracket(X, (osp.element("Y2"), 0), (osp.element("Y3"), 0)) == osp.element("Y1") * 2


def test_bracket_containment(osp):
    X = _x(osp)
    C = [osp.element("Y2"), osp.element("Xi1")]
    hull, _ = ad_hull(X, lsa_span(C))
    assert bracket_containment_check(X, C, hull)
    assert not bracket_containment_check(X, C, lsa_span(C))
