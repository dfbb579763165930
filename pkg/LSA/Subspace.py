"""Graded subspaces of a Lie superalgebra in canonical row-reduced form."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from COMMON.Errors import AlgebraMismatchError, ShapeError
from GRASSMANN.Grassmann import Parity
from LSA.Algebra import AlgebraElement, LieSuperalgebra
from LSA.Rref import rref_rows

Rows = Tuple[Tuple[Fraction, ...], ...]


def _reduce(rows: Rows, pivots: Tuple[int, ...], v: Sequence[Fraction]) -> List[Fraction]:
    residual = list(v)
    for p, row in zip(pivots, rows):
        c = residual[p]
        if c:
            residual = [r - c * x for r, x in zip(residual, row)]
    return residual


class GradedSubspace:
    """Span of homogeneous vectors, stored as one reduced basis per parity."""

    def __init__(self, algebra: LieSuperalgebra, even_rows: Iterable[Sequence] = (), odd_rows: Iterable[Sequence] = ()) -> None:
        self.algebra = algebra
        d = algebra.total_dim
        even, even_piv = rref_rows([list(r) for r in even_rows], d)
        odd, odd_piv = rref_rows([list(r) for r in odd_rows], d)
        self.even_basis: Rows = tuple(tuple(r) for r in even)
        self.odd_basis: Rows = tuple(tuple(r) for r in odd)
        self._even_pivots = even_piv
        self._odd_pivots = odd_piv

    @property
    def dim(self) -> Tuple[int, int]:
        return len(self.even_basis), len(self.odd_basis)

    @property
    def total_dim(self) -> int:
        return len(self.even_basis) + len(self.odd_basis)

    @property
    def is_full(self) -> bool:
        return self.dim == self.algebra.dim

    def elements(self) -> List[AlgebraElement]:
        return [AlgebraElement(self.algebra, r) for r in self.even_basis + self.odd_basis]

    def contains(self, v: AlgebraElement) -> bool:
        if v.algebra is not self.algebra:
            raise AlgebraMismatchError(f"element of {v.algebra.name} tested against a subspace of {self.algebra.name}")
        for part in v.homogeneous_parts():
            if part.parity == Parity.EVEN:
                rows, pivots = self.even_basis, self._even_pivots
            else:
                rows, pivots = self.odd_basis, self._odd_pivots
            if any(_reduce(rows, pivots, part.coeffs)):
                return False
        return True

    def extended(self, vectors: Iterable[AlgebraElement]) -> "GradedSubspace":
        even = [list(r) for r in self.even_basis]
        odd = [list(r) for r in self.odd_basis]
        for v in vectors:
            if v.algebra is not self.algebra:
                raise AlgebraMismatchError("cannot extend with an element of another algebra")
            for part in v.homogeneous_parts():
                (even if part.parity == Parity.EVEN else odd).append(list(part.coeffs))
        return GradedSubspace(self.algebra, even, odd)

    def issubset(self, other: "GradedSubspace") -> bool:
        return all(other.contains(v) for v in self.elements())

    def missing_basis_elements(self) -> List[str]:
        '''Names of ambient basis elements outside this subspace.'''
        return [nm for nm, e in zip(self.algebra.names, self.algebra.basis_elements()) if not self.contains(e)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        return (self.algebra is other.algebra and self.even_basis == other.even_basis
                and self.odd_basis == other.odd_basis)

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.even_basis, self.odd_basis))

    def __repr__(self) -> str:
        e, o = self.dim
        return f"GradedSubspace({self.algebra.name}, dim={e}|{o})"


# ---- Public API ----
def subspace_span(vectors: Sequence[AlgebraElement], algebra: Optional[LieSuperalgebra] = None) -> GradedSubspace:
    '''Mixed inputs are split into their even and odd parts before reduction.'''
    vectors = list(vectors)
    if algebra is None:
        if not vectors:
            raise ShapeError("span of an empty list needs the ambient algebra")
        algebra = vectors[0].algebra
    return GradedSubspace(algebra).extended(vectors)


def subspace_contains(S: GradedSubspace, v: AlgebraElement) -> bool:
    return S.contains(v)
