'''
Description: Built-in algebras and the worked example systems on SL(1|1), SL(2|1)
and OSp(2|1). Every entry keeps its structure constants, a faithful matrix
realization and the printed claims about it (table values, ad values, verdicts) so
verify_catalog can recompute all of them.
'''
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from COMMON.Cast import Frac, LinComb2Str
from COMMON.Description import (
    LOCALLY_CONTROLLABLE,
    STATUS_FAIL,
    STATUS_FLAGGED,
    STATUS_PASS,
    TRANSITIVE_NOT_DECIDED,
)
from COMMON.Errors import InvalidAlgebraError, ShapeError, UnknownAlgebraError
from CONTROL.Closure import ad_apply
from CONTROL.Rank import SystemSpec, Verdict, decide
from LSA.Algebra import LieSuperalgebra, bracket, check_graded_axioms, from_matrix_basis
from SUPERMAT.SuperMatrix import SuperMatrix, supertrace

logger = logging.getLogger(__name__)

Coefs = Mapping[str, object]


#========[ RECORDS ]=================================================================
@dataclass(frozen=True)
class Claim:
    """
    A printed statement about an entry. kind is one of
    table, ad, classification, lsarc_dim, ad_rank_dim, witnesses.
    note documents a known disagreement with the matrices.
    """

    kind: str
    subject: Tuple[str, ...] = ()
    printed: object = None
    system: Optional[str] = None
    power: int = 1
    note: Optional[str] = None

    def label(self) -> str:
        if self.kind == "table":
            return f"[{self.subject[0]}, {self.subject[1]}]"
        if self.kind == "ad":
            ad = "ad(X)" if self.power == 1 else f"ad^{self.power}(X)"
            return f"{self.system}: {ad}({self.subject[0]})"
        return f"{self.system}: {self.kind}"


@dataclass(frozen=True)
class CatalogSystem:
    name: str
    spec: SystemSpec
    description: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieSuperalgebra
    systems: Tuple[CatalogSystem, ...] = ()
    claims: Tuple[Claim, ...] = ()
    supertraceless: bool = False

    def system(self, name: str) -> SystemSpec:
        for s in self.systems:
            if s.name == name:
                return s.spec
        raise KeyError(f"{self.name} has no system {name!r}")

    @property
    def printed_verdicts(self) -> Dict[str, str]:
        return {c.system: c.printed for c in self.claims if c.kind == "classification"}

    def perturbed(self, i: int, j: int, k: int, value) -> "CatalogEntry":
        '''Copy whose algebra has c_ij^k replaced; systems keep the original algebra.'''
        return replace(self, algebra=self.algebra.with_constant(i, j, k, value))


@dataclass(frozen=True)
class ReportItem:
    entry: str
    check: str
    status: str
    detail: str = ""


@dataclass
class CatalogReport:
    items: List[ReportItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(it.status != STATUS_FAIL for it in self.items)

    def count(self, status: str) -> int:
        return sum(1 for it in self.items if it.status == status)

    def flagged(self) -> List[ReportItem]:
        return [it for it in self.items if it.status == STATUS_FLAGGED]

    def as_rows(self) -> List[Dict[str, str]]:
        return [{"entry": it.entry, "check": it.check, "status": it.status, "detail": it.detail} for it in self.items]


#========[ BUILDERS ]================================================================
def _mat(m: int, n: int, entries: Mapping[Tuple[int, int], object]) -> SuperMatrix:
    '''Matrix from 1-based {(i, j): value}.'''
    size = m + n
    rows = [[0] * size for _ in range(size)]
    for (i, j), v in entries.items():
        rows[i - 1][j - 1] = Frac(v)
    return SuperMatrix(m, n, rows)


def _algebra(name: str, names: Sequence[str], mats: Sequence[SuperMatrix],
             table: Mapping[Tuple[str, str], Coefs]) -> LieSuperalgebra:
    '''Algebra from a printed-style table {(a, b): {c: coef}} with a <= b in basis order.'''
    index = {nm: i for i, nm in enumerate(names)}
    triplets = [(index[a], index[b], index[c], Frac(v)) for (a, b), col in table.items() for c, v in col.items()]
    basis = list(zip(names, [m.parity for m in mats]))
    return LieSuperalgebra.from_triplets(basis, triplets, mats, name)


def _table_claims(table: Mapping[Tuple[str, str], Coefs],
                  printed: Mapping[Tuple[str, str], Tuple[Coefs, str]] = None) -> List[Claim]:
    printed = printed or {}
    out = []
    for key, col in table.items():
        if key in printed:
            value, note = printed[key]
            out.append(Claim("table", key, dict(value), note=note))
        else:
            out.append(Claim("table", key, dict(col)))
    return out


def _validated(entry: CatalogEntry) -> CatalogEntry:
    report = check_graded_axioms(entry.algebra)
    if not report.ok:
        raise InvalidAlgebraError(f"{entry.name} fails its axiom check: {report.violations[:3]}")
    return entry


#========[ SL(1|1) ]=================================================================
_SL11_TABLE = {("Xi1", "Xi2"): {"Y1": 1}}


def _sl11() -> CatalogEntry:
    names = ["Y1", "Xi1", "Xi2"]
    mats = [_mat(1, 1, {(1, 1): 1, (2, 2): 1}), _mat(1, 1, {(1, 2): 1}), _mat(1, 1, {(2, 1): 1})]
    g = _algebra("sl(1|1)", names, mats, _SL11_TABLE)
    e = g.element
    drift = _mat(1, 1, {(1, 1): 2, (2, 2): 1})
    ex1 = SystemSpec(g, drift, (), (e("Xi1"), e("Xi2")), "example1")
    claims = _table_claims(_SL11_TABLE) + [
        Claim("ad", ("Xi1",), {"Xi2": 1}, "example1", note="X = diag(2,1) gives ad(X)(Xi1) = Xi1"),
        Claim("ad", ("Xi2",), {"Xi1": 1}, "example1", note="X = diag(2,1) gives ad(X)(Xi2) = -Xi2"),
        Claim("classification", (), TRANSITIVE_NOT_DECIDED, "example1"),
        Claim("lsarc_dim", (), (1, 2), "example1"),
        Claim("witnesses", (), ("Y1",), "example1"),
    ]
    return CatalogEntry("sl(1|1)", g, (CatalogSystem("example1", ex1, "drift diag(2,1), odd controls Xi1, Xi2"),),
                        tuple(claims), supertraceless=True)


#========[ SL(2|1) ]=================================================================
_SL21_TABLE = {
    ("Y1", "Y3"): {"Y3": 1},
    ("Y1", "Y4"): {"Y4": -1},
    ("Y3", "Y4"): {"Y1": 2},
    ("Y1", "Xi1"): {"Xi1": Frac("1/2")},
    ("Y1", "Xi2"): {"Xi2": Frac("1/2")},
    ("Y1", "Xi3"): {"Xi3": Frac("-1/2")},
    ("Y1", "Xi4"): {"Xi4": Frac("-1/2")},
    ("Y2", "Xi1"): {"Xi1": Frac("1/2")},
    ("Y2", "Xi2"): {"Xi2": Frac("-1/2")},
    ("Y2", "Xi3"): {"Xi3": Frac("1/2")},
    ("Y2", "Xi4"): {"Xi4": Frac("-1/2")},
    ("Y3", "Xi3"): {"Xi1": -1},
    ("Y3", "Xi4"): {"Xi2": 1},
    ("Y4", "Xi1"): {"Xi3": -1},
    ("Y4", "Xi2"): {"Xi4": 1},
    ("Xi1", "Xi2"): {"Y3": 1},
    ("Xi1", "Xi4"): {"Y2": 1, "Y1": -1},
    ("Xi2", "Xi3"): {"Y1": 1, "Y2": 1},
    ("Xi3", "Xi4"): {"Y4": 1},
}


def _sl21() -> CatalogEntry:
    names = ["Y1", "Y2", "Y3", "Y4", "Xi1", "Xi2", "Xi3", "Xi4"]
    half = Frac("1/2")
    mats = [
        _mat(2, 1, {(1, 1): half, (2, 2): -half}),
        _mat(2, 1, {(1, 1): half, (2, 2): half, (3, 3): 1}),
        _mat(2, 1, {(1, 2): 1}),
        _mat(2, 1, {(2, 1): 1}),
        _mat(2, 1, {(3, 2): 1}),
        _mat(2, 1, {(1, 3): 1}),
        _mat(2, 1, {(3, 1): 1}),
        _mat(2, 1, {(2, 3): 1}),
    ]
    g = _algebra("sl(2|1)", names, mats, _SL21_TABLE)
    e = g.element
    controls = ((e("Y2"),), (e("Xi1"), e("Xi2")))
    ex2 = SystemSpec(g, _mat(2, 1, {(2, 1): 1}), *controls, "example2")
    rot = SystemSpec(g, _mat(2, 1, {(1, 2): 1, (2, 1): -1}), *controls, "example2-rotation")
    claims = _table_claims(_SL21_TABLE) + [
        Claim("ad", ("Y2",), {}, "example2"),
        Claim("ad", ("Y3",), {"Y1": 1}, "example2", note="X = e21 gives ad(X)(Y3) = -2*Y1"),
        Claim("ad", ("Xi1",), {"Xi3": 1}, "example2", note="X = e21 gives ad(X)(Xi1) = -Xi3"),
        Claim("ad", ("Xi2",), {"Xi4": 1}, "example2"),
        Claim("ad", ("Y3",), {"Y4": 1}, "example2", power=2, note="X = e21 gives ad^2(X)(Y3) = -2*Y4"),
        Claim("classification", (), LOCALLY_CONTROLLABLE, "example2",
              note="ad(e21) kills the only even control Y2, so the linear span is (1|4); "
                   "the printed verdict counts [Xi1, Xi2] = Y3, which is not a control vector"),
        Claim("lsarc_dim", (), (4, 4), "example2"),
        Claim("ad_rank_dim", (), (4, 4), "example2", note="linear span of ad-powers of the controls is (1|4)"),
        Claim("ad", ("Xi1",), {"Xi3": 1}, "example2-rotation"),
        Claim("ad", ("Xi2",), {"Xi4": 1}, "example2-rotation", note="rotation drift gives ad(X)(Xi2) = -Xi4"),
        Claim("ad", ("Xi1",), {"Xi1": -1}, "example2-rotation", power=2),
        Claim("ad", ("Xi2",), {"Xi2": 1}, "example2-rotation", power=2,
              note="rotation drift gives ad^2(X)(Xi2) = -Xi2"),
        Claim("classification", (), TRANSITIVE_NOT_DECIDED, "example2-rotation"),
        Claim("witnesses", (), ("Y1", "Y4"), "example2-rotation", note="Y3 is outside the span as well"),
    ]
    systems = (
        CatalogSystem("example2", ex2, "drift e21, controls Y2 | Xi1, Xi2"),
        CatalogSystem("example2-rotation", rot, "drift e12 - e21, controls Y2 | Xi1, Xi2"),
    )
    return CatalogEntry("sl(2|1)", g, systems, tuple(claims), supertraceless=True)


#========[ OSP(2|1) ]================================================================
_OSP21_TABLE = {
    ("Y1", "Y2"): {"Y2": 1},
    ("Y1", "Y3"): {"Y3": -1},
    ("Y1", "Xi1"): {"Xi1": Frac("1/2")},
    ("Y1", "Xi2"): {"Xi2": Frac("-1/2")},
    ("Y2", "Y3"): {"Y1": 2},
    ("Y2", "Xi2"): {"Xi1": -1},
    ("Y3", "Xi1"): {"Xi2": -1},
    ("Xi1", "Xi1"): {"Y2": Frac("1/2")},
    ("Xi1", "Xi2"): {"Y1": Frac("1/2")},
    ("Xi2", "Xi2"): {"Y3": Frac("-1/2")},
}


def _osp21() -> CatalogEntry:
    names = ["Y1", "Y2", "Y3", "Xi1", "Xi2"]
    half = Frac("1/2")
    mats = [
        _mat(2, 1, {(1, 1): half, (2, 2): -half}),
        _mat(2, 1, {(1, 2): 1}),
        _mat(2, 1, {(2, 1): 1}),
        _mat(2, 1, {(1, 3): half, (3, 2): half}),
        _mat(2, 1, {(2, 3): -half, (3, 1): half}),
    ]
    g = _algebra("osp(2|1)", names, mats, _OSP21_TABLE)
    e = g.element
    ex3 = SystemSpec(g, _mat(2, 1, {(1, 2): 1, (2, 1): 1}), (e("Y2"),), (e("Xi1"),), "example3")
    printed = {("Y1", "Y2"): ({"Y1": 1}, "the matrices give [Y1, Y2] = Y2")}
    claims = _table_claims(_OSP21_TABLE, printed) + [
        Claim("ad", ("Y2",), {"Y1": -2}, "example3"),
        Claim("ad", ("Xi1",), {"Xi2": -1}, "example3"),
        Claim("ad", ("Y2",), {"Y3": 1, "Y1": -1}, "example3", power=2,
              note="X = e12 + e21 gives ad^2(X)(Y2) = 2*Y2 - 2*Y3"),
        Claim("ad", ("Xi1",), {"Xi1": 1}, "example3", power=2),
        Claim("classification", (), LOCALLY_CONTROLLABLE, "example3"),
        Claim("lsarc_dim", (), (3, 2), "example3"),
        Claim("ad_rank_dim", (), (3, 2), "example3"),
    ]
    return CatalogEntry("osp(2|1)", g, (CatalogSystem("example3", ex3, "drift e12 + e21, controls Y2 | Xi1"),),
                        tuple(claims), supertraceless=True)


#========[ PARAMETRIC FAMILIES ]=====================================================
def _gl(m: int, n: int) -> CatalogEntry:
    if m + n == 0:
        raise ShapeError("gl(0|0) has no matrices")
    size = m + n
    even = [(i, j) for i in range(1, size + 1) for j in range(1, size + 1) if (i <= m) == (j <= m)]
    odd = [(i, j) for i in range(1, size + 1) for j in range(1, size + 1) if (i <= m) != (j <= m)]
    mats = [SuperMatrix.unit(m, n, i, j) for i, j in even + odd]
    name = f"gl({m}|{n})"
    return CatalogEntry(name, from_matrix_basis(mats, None, name))


def _abelian(m: int, n: int) -> CatalogEntry:
    return CatalogEntry(f"abelian({m}|{n})", LieSuperalgebra.abelian(m, n))


_FIXED = {"sl(1|1)": _sl11, "sl(2|1)": _sl21, "osp(2|1)": _osp21}
_FAMILY = re.compile(r"^(gl|abelian)\((\d+)\|(\d+)\)$")

CATALOG_NAMES = tuple(_FIXED)
'''Entries that carry example systems, in verification order'''


def _normalize(name: str) -> str:
    return re.sub(r"\s+", "", str(name)).lower()


# ---- Public API ----
@lru_cache(maxsize=None)
def load(name: str) -> CatalogEntry:
    key = _normalize(name)
    if key in _FIXED:
        entry = _FIXED[key]()
    else:
        match = _FAMILY.match(key)
        if match is None:
            raise UnknownAlgebraError(f"unknown algebra {name!r}; known: {', '.join(CATALOG_NAMES)}, gl(m|n), abelian(m|n)")
        family, m, n = match.group(1), int(match.group(2)), int(match.group(3))
        entry = _gl(m, n) if family == "gl" else _abelian(m, n)
    logger.debug("[CATALOG] loaded %s of dimension %s", entry.name, entry.algebra.dim)
    return _validated(entry)


def _check_claim(entry: CatalogEntry, claim: Claim, verdicts: Dict[str, Verdict]) -> Tuple[bool, str]:
    g = entry.algebra
    if claim.kind == "table":
        left, right = claim.subject
        computed = bracket(g.element(left), g.element(right))
        return computed == g.combination(claim.printed), str(computed)
    spec = entry.system(claim.system)
    if claim.kind == "ad":
        computed = ad_apply(spec.drift_action, spec.algebra.element(claim.subject[0]), claim.power)
        return computed == spec.algebra.combination(claim.printed), str(computed)
    if claim.system not in verdicts:
        verdicts[claim.system] = decide(spec)
    verdict = verdicts[claim.system]
    if claim.kind == "classification":
        return verdict.classification == claim.printed, verdict.classification
    if claim.kind == "lsarc_dim":
        return tuple(verdict.lsarc_dim) == tuple(claim.printed), str(verdict.lsarc_dim)
    if claim.kind == "ad_rank_dim":
        return tuple(verdict.ad_rank_dim) == tuple(claim.printed), str(verdict.ad_rank_dim)
    if claim.kind == "witnesses":
        return set(verdict.ad_rank_witnesses) == set(claim.printed), ", ".join(verdict.ad_rank_witnesses)
    raise ValueError(f"unknown claim kind {claim.kind!r}")


def _printed_str(claim: Claim) -> str:
    if isinstance(claim.printed, Mapping):
        return LinComb2Str((c, nm) for nm, c in claim.printed.items())
    return str(claim.printed)


def verify_entry(entry: CatalogEntry) -> List[ReportItem]:
    items = []
    g = entry.algebra
    axioms = check_graded_axioms(g)
    items.append(ReportItem(entry.name, "axioms", STATUS_PASS if axioms.ok else STATUS_FAIL,
                            "" if axioms.ok else f"{len(axioms.violations)} violations, first {axioms.violations[0]}"))
    if g.realization is not None:
        try:
            oracle = from_matrix_basis(g.realization, g.names)
            same = oracle.constants() == g.constants()
            detail = "" if same else "matrix brackets disagree with the stored constants at " + ", ".join(
                f"[{g.names[i]}, {g.names[j]}]" for (i, j) in sorted(set(oracle.constants()) | set(g.constants()))
                if oracle.structure(i, j) != g.structure(i, j))
        except Exception as exc:
            same, detail = False, str(exc)
        items.append(ReportItem(entry.name, "oracle", STATUS_PASS if same else STATUS_FAIL, detail))
        if entry.supertraceless:
            bad = [nm for nm, a in zip(g.names, g.realization) if supertrace(a) != 0]
            items.append(ReportItem(entry.name, "supertrace", STATUS_FAIL if bad else STATUS_PASS, ", ".join(bad)))
    verdicts: Dict[str, Verdict] = {}
    for claim in entry.claims:
        ok, computed = _check_claim(entry, claim, verdicts)
        if ok:
            status, detail = STATUS_PASS, ""
            if claim.note:
                logger.warning("[CATALOG] %s %s: documented discrepancy not observed", entry.name, claim.label())
        elif claim.note:
            status, detail = STATUS_FLAGGED, f"printed {_printed_str(claim)}, computed {computed}: {claim.note}"
        else:
            status, detail = STATUS_FAIL, f"printed {_printed_str(claim)}, computed {computed}"
        items.append(ReportItem(entry.name, claim.label(), status, detail))
    return items


def verify_catalog(only: Optional[str] = None, entries: Optional[Sequence[CatalogEntry]] = None) -> CatalogReport:
    if entries is None:
        entries = [load(nm) for nm in CATALOG_NAMES]
    if only is not None:
        key = _normalize(only)
        entries = [e for e in entries if _normalize(e.name) == key]
    report = CatalogReport()
    for entry in entries:
        report.items.extend(verify_entry(entry))
    logger.info("[CATALOG] %d checks: %d pass, %d flagged, %d fail", len(report.items),
                report.count(STATUS_PASS), report.count(STATUS_FLAGGED), report.count(STATUS_FAIL))
    return report
