'''
Description: JSON spec files (algebra + system + options) and schedule files.
Rationals travel as [num, den] pairs, indices are 0-based, constants are
[i, j, k, num, den] rows. Every problem is reported as SpecFileError naming the
field path, eg: system.odd_controls[1].
'''
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from COMMON.Cast import Frac2Pair, FracArr2PairArr, Pair2Frac
from COMMON.Description import MAX_GENERATORS, MODE_ANALYSIS, MODE_SIMULATION, PARITY_NAMES
from COMMON.Errors import SpecFileError, SuperCtrlError
from CATALOG.Catalog import CatalogEntry, load
from CONTROL.Drift import DriftAction
from CONTROL.Flows import ControlSchedule, Segment
from CONTROL.Rank import SystemSpec
from GRASSMANN.Grassmann import GrassmannNumber, Parity
from LSA.Algebra import AlgebraElement, LieSuperalgebra, from_matrix_basis
from SUPERMAT.SuperMatrix import SuperMatrix

logger = logging.getLogger(__name__)

Doc = Dict[str, Any]


@dataclass(frozen=True)
class SpecOptions:
    generators: Optional[int] = None
    mode: str = MODE_ANALYSIS
    p_cap: Optional[int] = None


@dataclass(frozen=True)
class LoadedSpec:
    system: SystemSpec
    options: SpecOptions
    doc: Doc


#========[ FIELD READERS ]===========================================================
def _need(doc: Doc, key: str, path: str):
    if not isinstance(doc, dict):
        raise SpecFileError(path, "expected an object")
    if key not in doc:
        raise SpecFileError(f"{path}.{key}" if path else key, "missing")
    return doc[key]


def _rat(value, path: str) -> Fraction:
    if isinstance(value, bool):
        raise SpecFileError(path, "booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, list):
        try:
            return Pair2Frac(value)
        except ValueError as exc:
            raise SpecFileError(path, str(exc)) from None
    raise SpecFileError(path, f"expected an integer or a [num, den] pair, got {value!r}")


def _int(value, path: str, low: int = 0, high: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < low or (high is not None and value > high):
        bound = f"[{low}, {high}]" if high is not None else f">= {low}"
        raise SpecFileError(path, f"expected an integer {bound}, got {value!r}")
    return value


def _list(value, path: str) -> list:
    if not isinstance(value, list):
        raise SpecFileError(path, "expected a list")
    return value


def _rows(value, size: int, path: str) -> List[List[Fraction]]:
    rows = _list(value, path)
    if len(rows) != size:
        raise SpecFileError(path, f"expected {size} rows, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        row = _list(row, f"{path}[{i}]")
        if len(row) != size:
            raise SpecFileError(f"{path}[{i}]", f"expected {size} entries, got {len(row)}")
        out.append([_rat(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def _parity(value, path: str) -> Parity:
    try:
        return Parity.parse(value)
    except SuperCtrlError:
        raise SpecFileError(path, f"unknown parity {value!r}") from None


#========[ ALGEBRA ]=================================================================
def _realization(doc: Doc, path: str) -> Tuple[int, int, List[SuperMatrix]]:
    m = _int(_need(doc, "m", path), f"{path}.m")
    n = _int(_need(doc, "n", path), f"{path}.n")
    if m + n == 0:
        raise SpecFileError(path, "m + n must be positive")
    mats = []
    for i, item in enumerate(_list(_need(doc, "matrices", path), f"{path}.matrices")):
        where = f"{path}.matrices[{i}]"
        rows = _rows(_need(item, "rows", where), m + n, f"{where}.rows")
        declared = _parity(_need(item, "parity", where), f"{where}.parity")
        actual = SuperMatrix(m, n, rows).parity
        if actual != declared and any(x for r in rows for x in r):
            raise SpecFileError(f"{where}.parity", f"declared {declared.label}, block position says {actual}")
        mats.append(SuperMatrix(m, n, rows, declared))
    return m, n, mats


def _algebra(doc: Doc) -> LieSuperalgebra:
    path = "algebra"
    if "catalog" in doc:
        try:
            return load(doc["catalog"]).algebra
        except SuperCtrlError as exc:
            raise SpecFileError(f"{path}.catalog", str(exc)) from None
    basis = []
    for i, item in enumerate(_list(_need(doc, "basis", path), f"{path}.basis")):
        where = f"{path}.basis[{i}]"
        if not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], str):
            raise SpecFileError(where, "expected [name, parity]")
        basis.append((item[0], _parity(item[1], f"{where}[1]")))
    d = len(basis)
    name = doc.get("name")
    mats = None
    if "realization" in doc:
        _, _, mats = _realization(doc["realization"], f"{path}.realization")
        if len(mats) != d:
            raise SpecFileError(f"{path}.realization.matrices", f"{len(mats)} matrices for {d} basis elements")
        for i, (mat, (nm, p)) in enumerate(zip(mats, basis)):
            if mat.parity != p:
                raise SpecFileError(f"{path}.realization.matrices[{i}].parity", f"{nm} is declared {p.label}")
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    if "constants" in doc:
        for r, row in enumerate(_list(doc["constants"], f"{path}.constants")):
            where = f"{path}.constants[{r}]"
            if not isinstance(row, list) or len(row) != 5:
                raise SpecFileError(where, "expected [i, j, k, num, den]")
            i, j, k = (_int(x, f"{where}[{t}]", 0, d - 1) for t, x in enumerate(row[:3]))
            col = table.setdefault((i, j), {})
            col[k] = col.get(k, Fraction(0)) + _rat(row[3:], f"{where}[3:5]")
    primary = doc.get("primary", "constants" if "constants" in doc else "realization")
    try:
        if primary == "constants":
            g = LieSuperalgebra(basis, table, mats, name)
            if mats is not None:
                oracle = from_matrix_basis(mats, g.names)
                if oracle.constants() != g.constants():
                    raise SpecFileError(f"{path}.realization", "matrix brackets disagree with the constants")
        elif primary == "realization":
            if mats is None:
                raise SpecFileError(f"{path}.realization", "missing while primary")
            g = from_matrix_basis(mats, [b[0] for b in basis], name)
            if "constants" in doc and LieSuperalgebra(basis, table).constants() != g.constants():
                raise SpecFileError(f"{path}.constants", "constants disagree with the matrix brackets")
        else:
            raise SpecFileError(f"{path}.primary", f"expected constants or realization, got {primary!r}")
    except SpecFileError:
        raise
    except SuperCtrlError as exc:
        raise SpecFileError(path, str(exc)) from None
    return g


#========[ SYSTEM ]==================================================================
def _element(g: LieSuperalgebra, value, path: str, parity: Optional[Parity] = None) -> AlgebraElement:
    coeffs = _list(value, path)
    if len(coeffs) != g.total_dim:
        raise SpecFileError(path, f"expected {g.total_dim} coefficients, got {len(coeffs)}")
    v = g.vector([_rat(x, f"{path}[{i}]") for i, x in enumerate(coeffs)])
    if parity is not None and not v.is_zero and v.parity != parity:
        raise SpecFileError(path, f"control is not {parity.label}")
    return v


def _drift(g: LieSuperalgebra, doc: Doc, path: str):
    if not isinstance(doc, dict) or len(doc) != 1:
        raise SpecFileError(path, "expected exactly one of matrix, coefficients, linear_map")
    kind, value = next(iter(doc.items()))
    if kind == "coefficients":
        x = _element(g, value, f"{path}.coefficients")
        if x.parity != Parity.EVEN:
            raise SpecFileError(f"{path}.coefficients", "drift must be even")
        return x
    if kind == "matrix":
        if g.realization is None:
            raise SpecFileError(f"{path}.matrix", "a matrix drift needs an algebra realization")
        first = g.realization[0]
        A = SuperMatrix(first.m, first.n, _rows(value, first.size, f"{path}.matrix"))
        if A.parity != Parity.EVEN:
            raise SpecFileError(f"{path}.matrix", "drift must be even")
        return A
    if kind == "linear_map":
        where = f"{path}.linear_map"
        m = _int(_need(value, "m", where), f"{where}.m")
        n = _int(_need(value, "n", where), f"{where}.n")
        A = SuperMatrix(m, n, _rows(_need(value, "rows", where), m + n, f"{where}.rows"))
        try:
            return DriftAction.from_linear_map(A, g)
        except SuperCtrlError as exc:
            raise SpecFileError(where, str(exc)) from None
    raise SpecFileError(f"{path}.{kind}", "unknown drift kind")


def _options(doc: Doc) -> SpecOptions:
    path = "options"
    if not isinstance(doc, dict):
        raise SpecFileError(path, "expected an object")
    generators = doc.get("generators")
    if generators is not None:
        generators = _int(generators, f"{path}.generators", 0, MAX_GENERATORS)
    mode = doc.get("mode", MODE_ANALYSIS)
    if mode not in (MODE_ANALYSIS, MODE_SIMULATION):
        raise SpecFileError(f"{path}.mode", f"expected {MODE_ANALYSIS} or {MODE_SIMULATION}, got {mode!r}")
    p_cap = doc.get("p_cap")
    if p_cap is not None:
        p_cap = _int(p_cap, f"{path}.p_cap")
    return SpecOptions(generators, mode, p_cap)


# ---- Public API ----
def parse_spec(doc: Doc) -> LoadedSpec:
    g = _algebra(_need(doc, "algebra", ""))
    sys_doc = _need(doc, "system", "")
    drift = _drift(g, _need(sys_doc, "drift", "system"), "system.drift")
    even = [_element(g, v, f"system.even_controls[{i}]", Parity.EVEN)
            for i, v in enumerate(_list(sys_doc.get("even_controls", []), "system.even_controls"))]
    odd = [_element(g, v, f"system.odd_controls[{i}]", Parity.ODD)
           for i, v in enumerate(_list(sys_doc.get("odd_controls", []), "system.odd_controls"))]
    try:
        spec = SystemSpec(g, drift, tuple(even), tuple(odd), str(doc.get("name", "system")))
    except SuperCtrlError as exc:
        raise SpecFileError("system", str(exc)) from None
    return LoadedSpec(spec, _options(doc.get("options", {})), doc)


def _read_json(path: str) -> Doc:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError("<json>", exc.msg, exc.lineno) from None


def load_spec(path: str) -> LoadedSpec:
    spec = parse_spec(_read_json(path))
    logger.info("[SPEC] %s: %s on %s", path, spec.system.name, spec.system.algebra.name)
    return spec


def _matrix_doc(A: SuperMatrix) -> List[List[List[int]]]:
    return [FracArr2PairArr(row) for row in A.rows]


def export_algebra(g: LieSuperalgebra) -> Doc:
    doc: Doc = {
        "name": g.name,
        "basis": [[nm, PARITY_NAMES[int(p)]] for nm, p in zip(g.names, g.parities)],
        "constants": [[i, j, k] + Frac2Pair(c) for i, j, k, c in g.triplets()],
        "primary": "constants",
    }
    if g.realization is not None:
        first = g.realization[0]
        doc["realization"] = {
            "m": first.m,
            "n": first.n,
            "matrices": [{"parity": PARITY_NAMES[int(a.parity)], "rows": _matrix_doc(a)} for a in g.realization],
        }
    return doc


def export_system(spec: SystemSpec, options: Optional[SpecOptions] = None) -> Doc:
    drift = spec.drift
    if isinstance(drift, SuperMatrix):
        drift_doc: Doc = {"matrix": _matrix_doc(drift)}
    elif isinstance(drift, AlgebraElement):
        drift_doc = {"coefficients": FracArr2PairArr(drift.coeffs)}
    elif drift.source == "linear_map":
        drift_doc = {"linear_map": {"m": drift.matrix.m, "n": drift.matrix.n, "rows": _matrix_doc(drift.matrix)}}
    elif drift.matrix is not None:
        drift_doc = {"matrix": _matrix_doc(drift.matrix)}
    else:
        raise SpecFileError("system.drift", f"{drift!r} has no exportable form")
    options = options or SpecOptions()
    opts: Doc = {"mode": options.mode, "p_cap": options.p_cap}
    if options.generators is not None:
        opts["generators"] = options.generators
    return {
        "name": spec.name,
        "algebra": export_algebra(spec.algebra),
        "system": {
            "drift": drift_doc,
            "even_controls": [FracArr2PairArr(c.coeffs) for c in spec.even_controls],
            "odd_controls": [FracArr2PairArr(c.coeffs) for c in spec.odd_controls],
        },
        "options": opts,
    }


def export_entry(entry: CatalogEntry, system: Optional[str] = None) -> Doc:
    if not entry.systems:
        raise SpecFileError("system", f"{entry.name} carries no example system")
    spec = entry.system(system) if system is not None else entry.systems[0].spec
    return export_system(spec)


def dump(doc: Doc, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


#========[ SCHEDULES ]===============================================================
def _grassmann(value, L: int, path: str) -> GrassmannNumber:
    '''[[[1], 0.5], [[1, 2, 3], -1]] -> 0.5*x1 - x1^x2^x3'''
    terms = {}
    for t, item in enumerate(_list(value, path)):
        where = f"{path}[{t}]"
        if not isinstance(item, list) or len(item) != 2:
            raise SpecFileError(where, "expected [generators, coefficient]")
        key = tuple(_int(x, f"{where}[0]", 1, L) for x in _list(item[0], f"{where}[0]"))
        coef = item[1]
        if isinstance(coef, bool) or not isinstance(coef, (int, float, list)):
            raise SpecFileError(f"{where}[1]", "expected a number")
        terms[key] = float(_rat(coef, f"{where}[1]")) if isinstance(coef, list) else float(coef)
    try:
        return GrassmannNumber(L, terms)
    except SuperCtrlError as exc:
        raise SpecFileError(path, str(exc)) from None


def parse_schedule(doc: Doc, default_generators: int) -> Tuple[ControlSchedule, int, Optional[List[List[Fraction]]]]:
    '''Returns (schedule, L, optional start rows).'''
    if not isinstance(doc, dict):
        raise SpecFileError("", "expected an object")
    L = _int(doc.get("generators", default_generators), "generators", 0, MAX_GENERATORS)
    segments = []
    for s, item in enumerate(_list(_need(doc, "segments", ""), "segments")):
        where = f"segments[{s}]"
        raw = _need(item, "duration", where)
        duration = float(_rat(raw, f"{where}.duration")) if isinstance(raw, list) else raw
        if isinstance(duration, bool) or not isinstance(duration, (int, float)):
            raise SpecFileError(f"{where}.duration", "expected a number")
        even = _list(item.get("even", []), f"{where}.even")
        for i, u in enumerate(even):
            if isinstance(u, bool) or not isinstance(u, (int, float)):
                raise SpecFileError(f"{where}.even[{i}]", "expected a number")
        odd = [_grassmann(v, L, f"{where}.odd[{j}]") for j, v in enumerate(_list(item.get("odd", []), f"{where}.odd"))]
        try:
            segments.append(Segment(float(duration), tuple(even), tuple(odd)))
        except SuperCtrlError as exc:
            raise SpecFileError(where, str(exc)) from None
    try:
        schedule = ControlSchedule(tuple(segments))
    except SuperCtrlError as exc:
        raise SpecFileError("segments", str(exc)) from None
    start = None
    if "start" in doc:
        start_rows = _list(doc["start"], "start")
        start = _rows(start_rows, len(start_rows), "start")
    return schedule, L, start


def load_schedule(path: str, default_generators: int) -> Tuple[ControlSchedule, int, Optional[List[List[Fraction]]]]:
    return parse_schedule(_read_json(path), default_generators)


def schedule_doc(schedule: ControlSchedule, L: int) -> Doc:
    return {
        "generators": L,
        "segments": [
            {
                "duration": s.duration,
                "even": list(s.even_inputs),
                "odd": [[[list(k), c] for k, c in sorted(nu.terms.items())] for nu in s.odd_inputs],
            }
            for s in schedule.segments
        ],
    }
