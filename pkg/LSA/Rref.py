'''
Description: Exact rational row reduction on top of sympy DomainMatrix over QQ.
Pivot choice is sympy's: first nonzero column, no scaling heuristics.
'''
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from COMMON.Cast import Frac, Frac2QQ, QQ2Frac
from COMMON.Errors import RankError, ShapeError

Vector = List[Fraction]


def rref_rows(rows: Sequence[Sequence], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    '''
    Reduced row echelon form, zero rows dropped.
    Eg: [[2, 4], [1, 2]] -> ([[1, 2]], (0,))
    '''
    if not rows or ncols == 0:
        return [], ()
    for r in rows:
        if len(r) != ncols:
            raise ShapeError(f"row of length {len(r)} in a {ncols}-column reduction")
    dm = DomainMatrix([[Frac2QQ(x) for x in r] for r in rows], (len(rows), ncols), QQ)
    reduced, pivots = dm.rref()
    pivots = tuple(int(p) for p in pivots)
    out = [[QQ2Frac(x) for x in row] for row in reduced.to_list()[:len(pivots)]]
    return out, pivots


def rank_of(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref_rows(rows, ncols)[1])


class RationalSolver:
    """Exact coordinates of vectors with respect to a fixed independent list.

    Reduces [M | I] once; every later solve is a single sweep over the pivot rows.
    """

    def __init__(self, vectors: Sequence[Sequence], width: Optional[int] = None) -> None:
        self._k = len(vectors)
        self._width = len(vectors[0]) if vectors else (width or 0)
        k, d = self._k, self._width
        augmented = [[Frac(x) for x in v] + [Fraction(int(i == j)) for j in range(k)] for i, v in enumerate(vectors)]
        reduced, pivots = rref_rows(augmented, d + k)
        self._pivot_rows = [(p, row[:d], row[d:]) for row, p in zip(reduced, pivots) if p < d]
        if len(self._pivot_rows) < k:
            raise RankError(f"{k - len(self._pivot_rows)} of {k} basis vectors are linearly dependent")

    @property
    def width(self) -> int:
        return self._width

    def solve(self, v: Sequence) -> Optional[Vector]:
        '''Coordinates c with sum c_i * basis_i == v, or None when v is outside the span.'''
        if len(v) != self._width:
            raise ShapeError(f"vector of length {len(v)}, expected {self._width}")
        residual = [Frac(x) for x in v]
        coords = [Fraction(0)] * self._k
        for p, mrow, trow in self._pivot_rows:
            c = residual[p]
            if c:
                residual = [r - c * x for r, x in zip(residual, mrow)]
                coords = [a + c * t for a, t in zip(coords, trow)]
        if any(residual):
            return None
        return coords
