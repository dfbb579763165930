'''
Description: Finite-dimensional Lie superalgebras over the rationals, given by
structure constants [e_i, e_j] = sum_k c_ij^k e_k on a homogeneous basis, with an
optional faithful matrix realization.
'''
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from COMMON.Cast import Frac, LinComb2Str
from COMMON.Description import MIXED, MODE_ANALYSIS
from COMMON.Errors import (
    AlgebraMismatchError,
    ModeError,
    NotClosedError,
    ParityError,
    PreconditionError,
    ShapeError,
)
from GRASSMANN.Grassmann import Parity
from LSA.Rref import RationalSolver
from SUPERMAT.SuperMatrix import SuperMatrix, super_bracket

logger = logging.getLogger(__name__)

Constants = Dict[Tuple[int, int], Dict[int, Fraction]]


def default_names(parities: Sequence[Parity]) -> List[str]:
    '''Y1, Y2, ... for even and Xi1, Xi2, ... for odd basis elements, each counted separately.'''
    names, even, odd = [], 0, 0
    for p in parities:
        if p == Parity.EVEN:
            even += 1
            names.append(f"Y{even}")
        else:
            odd += 1
            names.append(f"Xi{odd}")
    return names


def _sign(p: int, q: int) -> int:
    return -1 if (p and q) else 1


class LieSuperalgebra:
    """Immutable Lie superalgebra; equality is identity."""

    def __init__(self, basis: Sequence[Tuple[str, object]], constants: Mapping, realization: Optional[Sequence[SuperMatrix]] = None,
                 name: Optional[str] = None) -> None:
        self.names: Tuple[str, ...] = tuple(str(b[0]) for b in basis)
        self.parities: Tuple[Parity, ...] = tuple(Parity.parse(b[1]) for b in basis)
        if len(set(self.names)) != len(self.names):
            raise ShapeError("basis names must be unique")
        d = len(self.names)
        self._constants: Constants = {}
        for (i, j), column in constants.items():
            if not (0 <= i < d and 0 <= j < d):
                raise ShapeError(f"constant index ({i}, {j}) outside a {d}-dimensional basis")
            entry = {}
            for k, c in column.items():
                if not 0 <= k < d:
                    raise ShapeError(f"constant target {k} outside a {d}-dimensional basis")
                c = Frac(c)
                if c:
                    entry[k] = c
            if entry:
                self._constants[(i, j)] = entry
        self.realization: Optional[Tuple[SuperMatrix, ...]] = None
        if realization is not None:
            self.realization = tuple(realization)
            self._check_realization()
        self.name = name or f"algebra({self.dim[0]}|{self.dim[1]})"
        self._solver: Optional[RationalSolver] = None

    def _check_realization(self) -> None:
        mats = self.realization
        if len(mats) != len(self.names):
            raise ShapeError(f"{len(mats)} matrices for {len(self.names)} basis elements")
        shapes = {(a.m, a.n) for a in mats}
        if len(shapes) > 1:
            raise ShapeError(f"realization mixes block sizes {sorted(shapes)}")
        for nm, p, a in zip(self.names, self.parities, mats):
            if a.mode != MODE_ANALYSIS:
                raise ModeError("realizations hold exact rational matrices")
            if a.parity != p:
                raise ParityError(f"matrix for {nm} is {a.parity}, basis says {p.label}")

    # ---- construction helpers ----
    @classmethod
    def from_triplets(cls, basis, triplets: Iterable[Tuple[int, int, int, object]], realization=None,
                      name: Optional[str] = None, complete: bool = True) -> "LieSuperalgebra":
        '''
        Build from (i, j, k, c) meaning c_ij^k = c (0-based). With complete=True the
        pair (j, i) is filled by graded antisymmetry unless given explicitly.
        '''
        parities = [Parity.parse(b[1]) for b in basis]
        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        given = set()
        for i, j, k, c in triplets:
            table.setdefault((i, j), {})
            table[(i, j)][k] = table[(i, j)].get(k, Fraction(0)) + Frac(c)
            given.add((i, j))
        if complete:
            for (i, j) in list(given):
                if (j, i) in given:
                    continue
                s = -_sign(parities[i], parities[j])
                table[(j, i)] = {k: s * c for k, c in table[(i, j)].items()}
        return cls(basis, table, realization, name)

    @classmethod
    def abelian(cls, m: int, n: int, name: Optional[str] = None) -> "LieSuperalgebra":
        parities = [Parity.EVEN] * m + [Parity.ODD] * n
        return cls(list(zip(default_names(parities), parities)), {}, None, name or f"abelian({m}|{n})")

    def with_constant(self, i: int, j: int, k: int, value) -> "LieSuperalgebra":
        '''Copy with the single constant c_ij^k replaced, realization kept.'''
        table = {key: dict(col) for key, col in self._constants.items()}
        table.setdefault((i, j), {})[k] = Frac(value)
        return LieSuperalgebra(list(zip(self.names, self.parities)), table, self.realization, self.name)

    # ---- read access ----
    @property
    def dim(self) -> Tuple[int, int]:
        odd = sum(int(p) for p in self.parities)
        return len(self.parities) - odd, odd

    @property
    def total_dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a basis element of {self.name}") from None

    def element(self, ref: Union[str, int]) -> "AlgebraElement":
        i = self.index(ref) if isinstance(ref, str) else ref
        return AlgebraElement(self, tuple(Fraction(int(i == j)) for j in range(self.total_dim)))

    def basis_elements(self) -> List["AlgebraElement"]:
        return [self.element(i) for i in range(self.total_dim)]

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (Fraction(0),) * self.total_dim)

    def vector(self, coeffs: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(coeffs))

    def combination(self, terms: Mapping[str, object]) -> "AlgebraElement":
        '''Eg: {"Y2": 2, "Y3": -2} -> 2*Y2 - 2*Y3'''
        coeffs = [Fraction(0)] * self.total_dim
        for nm, c in terms.items():
            coeffs[self.index(nm)] += Frac(c)
        return AlgebraElement(self, tuple(coeffs))

    def structure(self, i: int, j: int) -> Dict[int, Fraction]:
        return dict(self._constants.get((i, j), {}))

    def constants(self) -> Constants:
        return {key: dict(col) for key, col in self._constants.items()}

    def triplets(self) -> List[Tuple[int, int, int, Fraction]]:
        return sorted((i, j, k, c) for (i, j), col in self._constants.items() for k, c in col.items())

    def bracket_table(self) -> List[Tuple[int, int, "AlgebraElement"]]:
        '''Nonzero [e_i, e_j] for i <= j, in basis order.'''
        rows = []
        for i in range(self.total_dim):
            for j in range(i, self.total_dim):
                value = bracket(self.element(i), self.element(j))
                if not value.is_zero:
                    rows.append((i, j, value))
        return rows

    # ---- realization ----
    def realize(self, u: "AlgebraElement") -> SuperMatrix:
        if self.realization is None:
            raise PreconditionError(f"{self.name} has no matrix realization")
        _check_same(self, u.algebra)
        first = self.realization[0]
        out = SuperMatrix.zeros(first.m, first.n)
        for c, mat in zip(u.coeffs, self.realization):
            if c:
                out = out + mat.scale(c)
        parity = u.parity
        return out.with_parity(Parity.EVEN if u.is_zero else parity)

    def coordinates(self, matrix: SuperMatrix) -> Optional["AlgebraElement"]:
        '''Element realized by matrix, or None when the matrix is outside the realized span.'''
        if self.realization is None:
            raise PreconditionError(f"{self.name} has no matrix realization")
        if self._solver is None:
            self._solver = RationalSolver([a.vector() for a in self.realization])
        coords = self._solver.solve(matrix.vector())
        return None if coords is None else AlgebraElement(self, tuple(coords))

    def __repr__(self) -> str:
        return f"LieSuperalgebra({self.name}, dim={self.dim[0]}|{self.dim[1]})"


def _check_same(a: LieSuperalgebra, b: LieSuperalgebra) -> None:
    if a is not b:
        raise AlgebraMismatchError(f"elements of {a.name} and {b.name} cannot be combined")


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Rational coefficient vector over the basis of an algebra."""

    algebra: LieSuperalgebra
    coeffs: Tuple[Fraction, ...] = field(default=())

    def __post_init__(self) -> None:
        coeffs = tuple(Frac(c) for c in self.coeffs)
        if len(coeffs) != self.algebra.total_dim:
            raise ShapeError(f"{len(coeffs)} coefficients for a {self.algebra.total_dim}-dimensional algebra")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def parity(self):
        degrees = {int(p) for c, p in zip(self.coeffs, self.algebra.parities) if c}
        if not degrees:
            return Parity.EVEN
        return Parity(degrees.pop()) if len(degrees) == 1 else MIXED

    def part(self, parity: Parity) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(c if p == parity else Fraction(0)
                                                  for c, p in zip(self.coeffs, self.algebra.parities)))

    def homogeneous_parts(self) -> List["AlgebraElement"]:
        return [x for x in (self.part(Parity.EVEN), self.part(Parity.ODD)) if not x.is_zero]

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_same(self.algebra, other.algebra)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, value) -> "AlgebraElement":
        value = Frac(value)
        return AlgebraElement(self.algebra, tuple(a * value for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.coeffs))

    def __str__(self) -> str:
        return LinComb2Str(zip(self.coeffs, self.algebra.names))

    def __repr__(self) -> str:
        return f"AlgebraElement({self.algebra.name}: {self})"


# ---- Public API ----
def bracket(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    g = u.algebra
    _check_same(g, v.algebra)
    out = [Fraction(0)] * g.total_dim
    for i, a in enumerate(u.coeffs):
        if not a:
            continue
        for j, b in enumerate(v.coeffs):
            if not b:
                continue
            for k, c in g._constants.get((i, j), {}).items():
                out[k] += a * b * c
    return AlgebraElement(g, tuple(out))


@dataclass
class AxiomReport:
    antisymmetry_ok: bool = True
    jacobi_ok: bool = True
    grading_ok: bool = True
    violations: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.antisymmetry_ok and self.jacobi_ok and self.grading_ok


def _bracket_basis(g: LieSuperalgebra, a: int, vec: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for k, x in vec.items():
        for l, c in g._constants.get((a, k), {}).items():
            out[l] = out.get(l, Fraction(0)) + x * c
    return out


def check_graded_axioms(g: LieSuperalgebra) -> AxiomReport:
    '''Exhaustive exact check over all basis pairs and triples; violations are data.'''
    report = AxiomReport()
    p = g.parities
    d = g.total_dim
    for (i, j), col in g._constants.items():
        for k in col:
            if p[k] != p[i].plus(p[j]):
                report.grading_ok = False
                report.violations.append(("grading", (i, j, k)))
    for i in range(d):
        for j in range(i, d):
            s = -_sign(p[i], p[j])
            left, right = g._constants.get((i, j), {}), g._constants.get((j, i), {})
            for k in sorted(set(left) | set(right)):
                if left.get(k, 0) != s * right.get(k, 0):
                    report.antisymmetry_ok = False
                    report.violations.append(("antisymmetry", (i, j, k)))
    for a in range(d):
        for b in range(d):
            for c in range(d):
                total: Dict[int, Fraction] = {}
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    inner = g._constants.get((y, z), {})
                    if not inner:
                        continue
                    s = _sign(p[x], p[z])
                    for l, v in _bracket_basis(g, x, inner).items():
                        total[l] = total.get(l, Fraction(0)) + s * v
                if any(total.values()):
                    report.jacobi_ok = False
                    report.violations.append(("jacobi", (a, b, c)))
    if not report.ok:
        logger.debug("[LSA] %s: %d axiom violations", g.name, len(report.violations))
    return report


def from_matrix_basis(mats: Sequence[SuperMatrix], names: Optional[Sequence[str]] = None,
                      name: Optional[str] = None) -> LieSuperalgebra:
    '''Structure constants of the span of homogeneous matrices, solved exactly.'''
    mats = list(mats)
    if not mats:
        raise ShapeError("empty matrix basis")
    for a in mats:
        if a.parity == MIXED:
            raise ParityError("basis matrices must be homogeneous")
        if a.mode != MODE_ANALYSIS:
            raise ModeError("matrix bases hold exact rational matrices")
    parities = [a.parity for a in mats]
    names = list(names) if names is not None else default_names(parities)
    solver = RationalSolver([a.vector() for a in mats])
    table: Constants = {}
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            value = super_bracket(a, b)
            if value.is_zero:
                continue
            coords = solver.solve(value.vector())
            if coords is None:
                raise NotClosedError(names[i], names[j])
            col = {k: c for k, c in enumerate(coords) if c}
            if col:
                table[(i, j)] = col
    g = LieSuperalgebra(list(zip(names, parities)), table, mats, name)
    g._solver = solver
    return g
