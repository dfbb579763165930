'''
Description: The drift X of a linear system seen through its action ad(X) on the
algebra coordinates. X may be an algebra element, a matrix A acting by
P -> AP - PA on a realized algebra, or an even linear map on R^{m|n} acting on the
abelian translation algebra by b -> Ab.
'''
from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from COMMON.Errors import AlgebraMismatchError, NotInvariantError, ParityError, PreconditionError, ShapeError
from GRASSMANN.Grassmann import Parity
from LSA.Algebra import AlgebraElement, LieSuperalgebra, bracket
from SUPERMAT.SuperMatrix import SuperMatrix, super_bracket

logger = logging.getLogger(__name__)


def ad_columns(A: SuperMatrix, algebra: LieSuperalgebra) -> List[Tuple[str, Optional[AlgebraElement]]]:
    '''(name, coordinates of [A, e]) for each realized basis element e; None when outside.'''
    if algebra.realization is None:
        raise PreconditionError(f"{algebra.name} has no matrix realization")
    return [(nm, algebra.coordinates(super_bracket(A, Y))) for nm, Y in zip(algebra.names, algebra.realization)]


class DriftAction:
    """ad(X) as a rational matrix; column j holds the coordinates of ad(X)(e_j)."""

    def __init__(self, algebra: LieSuperalgebra, columns: Sequence[Sequence[Fraction]], label: str = "X",
                 matrix: Optional[SuperMatrix] = None, source: str = "element") -> None:
        d = algebra.total_dim
        if len(columns) != d or any(len(c) != d for c in columns):
            raise ShapeError(f"ad(X) must be {d}x{d}")
        self.algebra = algebra
        self.columns: Tuple[Tuple[Fraction, ...], ...] = tuple(tuple(Fraction(x) for x in c) for c in columns)
        self.label = label
        self.matrix = matrix
        self.source = source

    @classmethod
    def from_element(cls, x: AlgebraElement, label: Optional[str] = None) -> "DriftAction":
        if x.parity != Parity.EVEN:
            raise ParityError(f"drift {x} is not even")
        g = x.algebra
        columns = [bracket(x, e).coeffs for e in g.basis_elements()]
        matrix = g.realize(x) if g.realization is not None else None
        return cls(g, columns, label or str(x), matrix, "element")

    @classmethod
    def from_matrix(cls, A: SuperMatrix, algebra: LieSuperalgebra, label: Optional[str] = None) -> "DriftAction":
        if A.parity != Parity.EVEN:
            raise ParityError("drift matrix must be even")
        columns = []
        for nm, coords in ad_columns(A, algebra):
            if coords is None:
                raise NotInvariantError(nm)
            columns.append(coords.coeffs)
        return cls(algebra, columns, label or "A", A, "matrix")

    @classmethod
    def from_linear_map(cls, A: SuperMatrix, algebra: Optional[LieSuperalgebra] = None,
                        label: Optional[str] = None) -> "DriftAction":
        '''Linear field p -> A p on R^{m|n}; [Ax, b] = Ab on constant fields b.'''
        m, n = A.m, A.n
        algebra = algebra or LieSuperalgebra.abelian(m, n)
        if algebra.dim != (m, n) or algebra.parities != tuple([Parity.EVEN] * m + [Parity.ODD] * n):
            raise ShapeError(f"{algebra.name} is not the translation algebra of R^({m}|{n})")
        if any(c for *_, c in algebra.triplets()):
            raise PreconditionError(f"a linear field drift needs an abelian algebra, {algebra.name} has nonzero brackets")
        rows = A.rows
        for i in range(A.size):
            for j in range(A.size):
                if rows[i][j] and (i < m) != (j < m):
                    raise ParityError("linear drift must map even coordinates to even and odd to odd")
        columns = [[rows[i][j] for i in range(A.size)] for j in range(A.size)]
        return cls(algebra, columns, label or "A", A, "linear_map")

    @property
    def is_zero(self) -> bool:
        return not any(x for c in self.columns for x in c)

    def apply(self, v: AlgebraElement) -> AlgebraElement:
        if v.algebra is not self.algebra:
            raise AlgebraMismatchError(f"drift acts on {self.algebra.name}, got an element of {v.algebra.name}")
        d = self.algebra.total_dim
        out = [Fraction(0)] * d
        for j, a in enumerate(v.coeffs):
            if a:
                for k, c in enumerate(self.columns[j]):
                    if c:
                        out[k] += a * c
        return AlgebraElement(self.algebra, tuple(out))

    def rows(self) -> List[List[Fraction]]:
        d = self.algebra.total_dim
        return [[self.columns[j][i] for j in range(d)] for i in range(d)]

    def __repr__(self) -> str:
        return f"DriftAction({self.label} on {self.algebra.name}, from {self.source})"


def as_drift(x: Union[AlgebraElement, SuperMatrix, DriftAction], algebra: Optional[LieSuperalgebra] = None) -> DriftAction:
    if isinstance(x, DriftAction):
        return x
    if isinstance(x, AlgebraElement):
        return DriftAction.from_element(x)
    if isinstance(x, SuperMatrix):
        if algebra is None:
            raise PreconditionError("a matrix drift needs the algebra it acts on")
        return DriftAction.from_matrix(x, algebra)
    raise TypeError(f"cannot use {type(x).__name__} as a drift")
