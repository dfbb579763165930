import random

import pytest
import sympy

from CATALOG.Catalog import load
from COMMON.Description import (
    ANNOTATIONS,
    LOCALLY_CONTROLLABLE,
    NOT_TRANSITIVE,
    TRANSITIVE_NOT_DECIDED,
)
from COMMON.Errors import AlgebraMismatchError, ParityError, PreconditionError, ShapeError
from CONTROL.Rank import (
    SystemSpec,
    ad_power_bound,
    ad_rank,
    ad_rank_space,
    decide,
    kalman_rank,
    kalman_subspace,
    kalman_system,
    lsarc,
    lsarc_space,
)
from SUPERMAT.SuperMatrix import SuperMatrix


def _system(entry, name):
    return load(entry).system(name)


# ---- worked examples ----
def test_example1():
    sys = _system("sl(1|1)", "example1")
    assert lsarc(sys) == (True, (1, 2))
    assert ad_rank(sys) == (False, (0, 2))
    verdict = decide(sys)
    assert verdict.classification == TRANSITIVE_NOT_DECIDED
    assert verdict.annotation == "transitive by LSARC but not locally controllable"
    assert verdict.ad_rank_witnesses == ("Y1",)
    assert verdict.lsarc_witnesses == ()
    assert verdict.p == 2


def test_example2_shear_drift():
    sys = _system("sl(2|1)", "example2")
    verdict = decide(sys)
    assert verdict.lsarc_holds and verdict.lsarc_dim == (4, 4)
    assert verdict.hull_dim == (4, 4)
    # ad(e21) annihilates Y2, so only one even direction is reached linearly
    assert verdict.ad_rank_dim == (1, 4)
    assert set(verdict.ad_rank_witnesses) == {"Y1", "Y3", "Y4"}
    assert verdict.classification == TRANSITIVE_NOT_DECIDED


def test_example2_rotation_drift():
    verdict = decide(_system("sl(2|1)", "example2-rotation"))
    assert verdict.lsarc_holds and verdict.lsarc_dim == (4, 4)
    assert not verdict.ad_rank_holds
    assert {"Y1", "Y4"} <= set(verdict.ad_rank_witnesses)
    assert verdict.classification == TRANSITIVE_NOT_DECIDED


def test_example3():
    sys = _system("osp(2|1)", "example3")
    assert lsarc(sys) == (True, (3, 2))
    assert ad_rank(sys) == (True, (3, 2))
    verdict = decide(sys)
    assert verdict.classification == LOCALLY_CONTROLLABLE
    assert verdict.annotation == ANNOTATIONS[LOCALLY_CONTROLLABLE]
    assert verdict.ad_rank_witnesses == ()


def test_ad_rank_space_is_inside_lsarc_space():
    for entry, name in (("sl(1|1)", "example1"), ("sl(2|1)", "example2"),
                        ("sl(2|1)", "example2-rotation"), ("osp(2|1)", "example3")):
        sys = _system(entry, name)
        assert ad_rank_space(sys).issubset(lsarc_space(sys))


def test_not_transitive():
    g = load("osp(2|1)").algebra
    sys = SystemSpec(g, g.zero(), (g.element("Y2"),), (), "drift-free")
    verdict = decide(sys)
    assert not verdict.lsarc_holds
    assert verdict.lsarc_dim == (1, 0)
    assert verdict.classification == NOT_TRANSITIVE
    assert verdict.annotation == "not transitive: LSARC fails"


def test_power_cap_changes_the_linear_span():
    sys = _system("osp(2|1)", "example3")
    assert ad_rank(sys, p_cap=0) == (False, (1, 1))
    assert ad_rank(sys, p_cap=1) == (False, (2, 2))
    assert lsarc(sys, p_cap=0) == (False, (1, 1))
    assert ad_power_bound(sys.algebra) == 4
    assert ad_power_bound(sys.algebra, 2) == 2
    with pytest.raises(PreconditionError):
        ad_power_bound(sys.algebra, -1)


def test_report_shape():
    report = decide(_system("osp(2|1)", "example3")).to_report()
    assert report["classification"] == LOCALLY_CONTROLLABLE
    assert report["lsarc"] == {"holds": True, "dim": [3, 2], "total_reading": True}
    assert report["ambient_dim"] == [3, 2]
    assert report["hull_trace"]["hull_dim"] == [3, 2]
    assert report["witnesses"] == {"lsarc": [], "ad_rank": []}


def test_total_reading_on_partial_span():
    g = load("sl(1|1)").algebra
    verdict = decide(SystemSpec(g, g.zero(), (g.element("Y1"),), (g.element("Xi1"),)))
    assert verdict.ad_rank_dim == (1, 1)
    assert verdict.total_reading() == {"lsarc": False, "ad_rank": False}


# ---- validation ----
def test_system_validation():
    g = load("sl(1|1)").algebra
    h = load("osp(2|1)").algebra
    with pytest.raises(ShapeError):
        SystemSpec(g, g.zero())
    with pytest.raises(ParityError):
        SystemSpec(g, g.zero(), (g.element("Xi1"),))
    with pytest.raises(ParityError):
        SystemSpec(g, g.zero(), (), (g.element("Y1"),))
    with pytest.raises(ParityError):
        SystemSpec(g, g.element("Xi1"), (g.element("Y1"),))
    with pytest.raises(AlgebraMismatchError):
        SystemSpec(g, g.zero(), (h.element("Y1"),))
    with pytest.raises(AlgebraMismatchError):
        SystemSpec(g, h.zero(), (g.element("Y1"),))


# ---- Kalman ----
def test_kalman_double_integrator():
    A = SuperMatrix(2, 0, [[0, 1], [0, 0]])
    assert kalman_rank(A, [[0, 1]], []) == (True, (2, 0))
    assert kalman_rank(A, [[1, 0]], []) == (False, (1, 0))


def test_kalman_odd_block():
    A = SuperMatrix(1, 2, [[1, 0, 0], [0, 0, 1], [0, 0, 0]])
    assert kalman_rank(A, [[1, 0, 0]], [[0, 0, 1]]) == (True, (1, 2))
    assert kalman_rank(A, [[1, 0, 0]], [[0, 1, 0]]) == (False, (1, 1))
    assert kalman_rank(A, [], [[0, 0, 1]]) == (False, (0, 2))


def test_kalman_column_errors():
    A = SuperMatrix.identity(1, 1)
    with pytest.raises(ParityError):
        kalman_rank(A, [[1, 1]], [])
    with pytest.raises(ShapeError):
        kalman_rank(A, [[1]], [])


def _random_block_matrix(rng, m, n):
    size = m + n
    rows = [[rng.randint(-2, 2) if (i < m) == (j < m) else 0 for j in range(size)] for i in range(size)]
    return SuperMatrix(m, n, rows)


def _random_columns(rng, m, n, count, even):
    size = m + n
    block = range(m) if even else range(m, size)
    return [[rng.randint(-1, 1) if i in block else 0 for i in range(size)] for _ in range(count)]


def test_kalman_agrees_with_rank_conditions_on_abelian_algebras():
    rng = random.Random(42)
    for _ in range(20):
        m = rng.randint(1, 4)
        n = rng.randint(0, 6 - m)
        A = _random_block_matrix(rng, m, n)
        even = _random_columns(rng, m, n, rng.randint(1, 2), True)
        odd = _random_columns(rng, m, n, rng.randint(0, 2), False) if n else []
        sys = kalman_system(A, even, odd)
        kal = kalman_subspace(A, even, odd, algebra=sys.algebra)
        assert lsarc_space(sys) == kal
        assert ad_rank_space(sys) == kal
        if n == 0:
            M = sympy.Matrix(A.rows)
            B = sympy.Matrix(even).T
            ctrb = sympy.Matrix.hstack(*[M ** i * B for i in range(m)])
            assert kal.dim == (ctrb.rank(), 0)
