import random
from fractions import Fraction

import pytest

from CATALOG.Catalog import load
from COMMON.Errors import AlgebraMismatchError, ModeError, NotClosedError, ParityError, RankError, ShapeError
from CONTROL.Closure import is_bracket_closed, lsa_span
from GRASSMANN.Grassmann import Parity
from LSA.Algebra import LieSuperalgebra, bracket, check_graded_axioms, default_names, from_matrix_basis
from LSA.Rref import RationalSolver, rank_of, rref_rows
from LSA.Subspace import subspace_contains, subspace_span
from SUPERMAT.SuperMatrix import SuperMatrix

EVEN, ODD = Parity.EVEN, Parity.ODD


@pytest.fixture(scope="module")
def sl11():
    return load("sl(1|1)").algebra


@pytest.fixture(scope="module")
def sl21():
    return load("sl(2|1)").algebra


@pytest.fixture(scope="module")
def osp():
    return load("osp(2|1)").algebra


# ---- rref ----
def test_rref_rows():
    assert rref_rows([[2, 4], [1, 2]], 2) == ([[1, 2]], (0,))
    assert rref_rows([], 3) == ([], ())
    assert rank_of([[1, 0, 1], [0, 1, 1], [1, 1, 2]], 3) == 2
    with pytest.raises(ShapeError):
        rref_rows([[1, 2], [1]], 2)


def test_rational_solver():
    solver = RationalSolver([[1, 1, 0], [0, 1, 1]])
    assert solver.solve([1, 3, 2]) == [1, 2]
    assert solver.solve([1, 0, 0]) is None
    with pytest.raises(RankError):
        RationalSolver([[1, 2], [2, 4]])


# ---- bracket ----
def test_named_brackets(sl11, osp, sl21):
    assert bracket(sl11.element("Xi1"), sl11.element("Xi2")) == sl11.element("Y1")
    assert bracket(osp.element("Xi1"), osp.element("Xi1")) == osp.element("Y2") * Fraction(1, 2)
    assert bracket(osp.element("Y2"), osp.element("Y3")) == osp.element("Y1") * 2
    assert bracket(osp.element("Xi2"), osp.element("Xi2")) == osp.element("Y3") * Fraction(-1, 2)
    assert bracket(sl21.element("Y3"), sl21.element("Y4")) == sl21.element("Y1") * 2
    assert bracket(sl21.element("Xi1"), sl21.element("Xi2")) == sl21.element("Y3")
    assert bracket(sl21.element("Xi1"), sl21.element("Xi4")) == sl21.combination({"Y2": 1, "Y1": -1})


def test_bracket_rejects_foreign_elements(sl11, osp):
    with pytest.raises(AlgebraMismatchError):
        bracket(sl11.element("Y1"), osp.element("Y1"))


def test_bracket_is_graded_antisymmetric(sl21):
    for u in sl21.basis_elements():
        for v in sl21.basis_elements():
            s = -1 if (u.parity == ODD and v.parity == ODD) else 1
            assert bracket(u, v) == bracket(v, u) * (-s)


def test_element_text(osp):
    assert str(osp.combination({"Y2": 2, "Y3": -2})) == "2*Y2 - 2*Y3"
    assert str(osp.combination({"Y1": Fraction(1, 2)})) == "1/2*Y1"
    assert str(osp.zero()) == "0"


def test_default_names():
    assert default_names([EVEN, ODD, EVEN, ODD]) == ["Y1", "Xi1", "Y2", "Xi2"]


# ---- axioms ----
@pytest.mark.parametrize("name", ["sl(1|1)", "sl(2|1)", "osp(2|1)", "gl(1|1)", "gl(2|1)", "abelian(2|2)"])
def test_catalog_algebras_satisfy_axioms(name):
    assert check_graded_axioms(load(name).algebra).ok


def test_grading_violation_is_reported():
    g = LieSuperalgebra.from_triplets([("Y1", EVEN), ("Xi1", ODD)], [(0, 1, 0, 1)])
    report = check_graded_axioms(g)
    assert not report.grading_ok
    assert ("grading", (0, 1, 0)) in report.violations


def test_antisymmetry_violation_is_reported():
    g = LieSuperalgebra.from_triplets([("Y1", EVEN), ("Y2", EVEN)], [(0, 1, 0, 1)], complete=False)
    report = check_graded_axioms(g)
    assert not report.antisymmetry_ok
    assert not report.ok


def test_jacobi_violation_is_reported():
    # cyclic sum on (Y1, Y2, Y3) is 2*Y3
    g = LieSuperalgebra.from_triplets(
        [("Y1", EVEN), ("Y2", EVEN), ("Y3", EVEN)],
        [(0, 1, 2, 1), (0, 2, 0, 1), (1, 2, 1, 1)],
    )
    report = check_graded_axioms(g)
    assert report.antisymmetry_ok and report.grading_ok
    assert not report.jacobi_ok


def test_perturbed_constant_breaks_axioms(sl21):
    i, j, k = sl21.index("Y3"), sl21.index("Y4"), sl21.index("Y1")
    assert not check_graded_axioms(sl21.with_constant(i, j, k, 3)).ok


# ---- matrix bases ----
def test_constants_from_sl11_matrices(sl11):
    g = from_matrix_basis(sl11.realization)
    assert g.names == ("Y1", "Xi1", "Xi2")
    assert g.triplets() == [(1, 2, 0, 1), (2, 1, 0, 1)]


def test_constants_from_osp_matrices(osp):
    g = from_matrix_basis(osp.realization, osp.names)
    assert g.constants() == osp.constants()
    assert g.structure(1, 2) == {0: 2}


def test_matrix_basis_errors():
    with pytest.raises(ShapeError):
        from_matrix_basis([])
    with pytest.raises(ParityError):
        from_matrix_basis([SuperMatrix(1, 1, [[1, 1], [0, 0]])])
    with pytest.raises(NotClosedError):
        from_matrix_basis([SuperMatrix.unit(2, 0, 1, 2), SuperMatrix.unit(2, 0, 2, 1)])
    with pytest.raises(RankError):
        from_matrix_basis([SuperMatrix.unit(1, 1, 1, 1), SuperMatrix.unit(1, 1, 1, 1).scale(2)])
    with pytest.raises(ModeError):
        from_matrix_basis([SuperMatrix.identity(1, 1).to_simulation(1)])


def test_random_subalgebras_of_gl22_satisfy_axioms():
    gl = load("gl(2|2)").algebra
    rng = random.Random(31)
    basis = gl.basis_elements()
    for _ in range(100):
        gens = []
        for _ in range(rng.randint(1, 3)):
            parity = rng.choice((EVEN, ODD))
            pool = [e for e in basis if e.parity == parity]
            v = gl.zero()
            for e in rng.sample(pool, 2):
                v = v + e * rng.randint(-2, 2)
            gens.append(v)
        space = lsa_span(gens, gl)
        if space.total_dim == 0:
            continue
        assert is_bracket_closed(space)
        sub = from_matrix_basis([gl.realize(v) for v in space.elements()])
        assert sub.dim == space.dim
        assert check_graded_axioms(sub).ok


def test_realize_and_coordinates(osp):
    v = osp.combination({"Y1": 2, "Y3": -1})
    assert osp.coordinates(osp.realize(v)) == v
    assert osp.realize(osp.element("Xi1")).parity == ODD
    assert osp.coordinates(SuperMatrix.unit(2, 1, 3, 3)) is None


def test_realization_must_match_basis_parity():
    with pytest.raises(ParityError):
        LieSuperalgebra([("Y1", EVEN)], {}, [SuperMatrix.unit(1, 1, 1, 2)])
    with pytest.raises(ShapeError):
        LieSuperalgebra([("Y1", EVEN), ("Y2", EVEN)], {}, [SuperMatrix.identity(1, 1)])


# ---- subspaces ----
def test_span_and_membership(sl11):
    xi = [sl11.element("Xi1"), sl11.element("Xi2")]
    lin = subspace_span(xi)
    assert lin.dim == (0, 2)
    assert not lin.contains(sl11.element("Y1"))
    closed = lsa_span(xi, sl11)
    assert closed.dim == (1, 2)
    assert closed.is_full
    assert closed.contains(sl11.element("Y1"))
    assert lin.issubset(closed) and not closed.issubset(lin)
    assert lin.missing_basis_elements() == ["Y1"]


def test_subspace_contains(sl11):
    xi = [sl11.element("Xi1"), sl11.element("Xi2")]
    y1 = sl11.element("Y1")
    assert subspace_contains(lsa_span(xi, sl11), y1)
    assert not subspace_contains(subspace_span(xi), y1)
    assert subspace_contains(subspace_span(xi), sl11.combination({"Xi1": 2, "Xi2": -1}))
    for S in (subspace_span([], sl11), subspace_span(xi), lsa_span(xi, sl11)):
        assert subspace_contains(S, sl11.zero())


def test_mixed_vectors_split_by_parity(sl11):
    S = subspace_span([sl11.element("Y1") + sl11.element("Xi1")])
    assert S.dim == (1, 1)
    assert S.contains(sl11.element("Xi1"))


def test_span_edge_cases(sl11, osp):
    assert subspace_span([], sl11).dim == (0, 0)
    with pytest.raises(ShapeError):
        subspace_span([])
    with pytest.raises(AlgebraMismatchError):
        subspace_span([], sl11).contains(osp.element("Y1"))


def test_extended_and_equality(osp):
    a = subspace_span([osp.element("Y2")])
    b = a.extended([osp.element("Xi1")])
    assert b.dim == (1, 1)
    assert b == subspace_span([osp.element("Xi1"), osp.element("Y2") * 3])


def test_lsa_span_examples(osp, sl21):
    assert lsa_span([osp.element("Y2"), osp.element("Xi1")]).dim == (1, 1)
    S = lsa_span([sl21.element("Y2"), sl21.element("Xi1"), sl21.element("Xi2")])
    assert S.dim == (2, 2)
    assert S.contains(sl21.element("Y3"))
    assert set(S.missing_basis_elements()) == {"Y1", "Y4", "Xi3", "Xi4"}
