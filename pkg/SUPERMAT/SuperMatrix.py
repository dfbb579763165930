'''
Description: (m|n)-graded square supermatrices.
Analysis mode keeps exact rational entries and takes the parity from block position;
simulation mode keeps a float coefficient stack over the Grassmann monomials
(see SUPERMAT.Stack) and carries a declared parity.
'''
from __future__ import annotations

import logging
import math
from fractions import Fraction
from numbers import Number
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from COMMON.Cast import Frac, Frac2QQ, QQ2Frac
from COMMON.Description import EXP_SCALE_NORM, EXP_TAYLOR_ORDER, MIXED, MODE_ANALYSIS, MODE_SIMULATION
from COMMON.Errors import (
    BerezinianUndefinedError,
    GeneratorCountError,
    ModeError,
    NotInvertibleError,
    NumericError,
    ParityError,
    ShapeError,
)
from GRASSMANN.Grassmann import GrassmannNumber, Parity
from SUPERMAT.Stack import (
    check_stack,
    gvec_from,
    gvec_mul,
    gvec_to,
    stack_det,
    stack_eye,
    stack_from_body,
    stack_inv,
    stack_matmul,
    stack_trace,
)

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[Fraction, ...], ...]
ParityLike = Union[Parity, str]


def _positional_parity(rows: Rows, m: int) -> ParityLike:
    diag = off = False
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x:
                if (i < m) == (j < m):
                    diag = True
                else:
                    off = True
    if diag and off:
        return MIXED
    return Parity.ODD if off else Parity.EVEN


class SuperMatrix:
    """Square (m|n) supermatrix in analysis or simulation mode; immutable."""

    __slots__ = ("m", "n", "parity", "mode", "num_generators", "_rows", "_stack")

    def __init__(self, m: int, n: int, rows=None, parity: Optional[ParityLike] = None, *,
                 stack: Optional[np.ndarray] = None, num_generators: Optional[int] = None) -> None:
        if m < 0 or n < 0 or m + n == 0:
            raise ShapeError(f"invalid block sizes ({m}|{n})")
        size = m + n
        self.m = m
        self.n = n
        if stack is not None:
            if num_generators is None:
                raise GeneratorCountError("simulation matrices need L")
            stack = np.array(stack, dtype=float)
            check_stack(stack, num_generators)
            if stack.shape[1:] != (size, size):
                raise ShapeError(f"stack entries are {stack.shape[1:]}, expected {(size, size)}")
            stack.setflags(write=False)
            self.mode = MODE_SIMULATION
            self.num_generators = num_generators
            self._rows = None
            self._stack = stack
            self.parity = Parity.EVEN if parity is None else (parity if parity == MIXED else Parity.parse(parity))
            return
        if rows is None:
            raise ShapeError("analysis matrices need rows")
        rows = tuple(tuple(Frac(x) for x in row) for row in rows)
        if len(rows) != size or any(len(r) != size for r in rows):
            raise ShapeError(f"expected a {size}x{size} array for ({m}|{n})")
        self.mode = MODE_ANALYSIS
        self.num_generators = None
        self._rows = rows
        self._stack = None
        if parity is None:
            self.parity = _positional_parity(rows, m)
        else:
            self.parity = parity if parity == MIXED else Parity.parse(parity)

    # ---- construction helpers ----
    @classmethod
    def zeros(cls, m: int, n: int, parity: ParityLike = Parity.EVEN) -> "SuperMatrix":
        return cls(m, n, [[0] * (m + n) for _ in range(m + n)], parity)

    @classmethod
    def identity(cls, m: int, n: int) -> "SuperMatrix":
        size = m + n
        return cls(m, n, [[int(i == j) for j in range(size)] for i in range(size)], Parity.EVEN)

    @classmethod
    def unit(cls, m: int, n: int, i: int, j: int, coef=1) -> "SuperMatrix":
        '''Matrix unit e_ij with 1-based indices, parity from block position.'''
        size = m + n
        rows = [[0] * size for _ in range(size)]
        rows[i - 1][j - 1] = coef
        return cls(m, n, rows)

    @classmethod
    def diag(cls, m: int, n: int, values: Sequence) -> "SuperMatrix":
        size = m + n
        return cls(m, n, [[values[i] if i == j else 0 for j in range(size)] for i in range(size)], Parity.EVEN)

    @classmethod
    def from_stack(cls, m: int, n: int, stack, num_generators: int, parity: ParityLike = Parity.EVEN) -> "SuperMatrix":
        return cls(m, n, parity=parity, stack=stack, num_generators=num_generators)

    # ---- read access ----
    @property
    def size(self) -> int:
        return self.m + self.n

    @property
    def is_simulation(self) -> bool:
        return self.mode == MODE_SIMULATION

    @property
    def rows(self) -> Rows:
        if self._rows is None:
            raise ModeError("rows are only available in analysis mode")
        return self._rows

    @property
    def stack(self) -> np.ndarray:
        if self._stack is None:
            raise ModeError("stack is only available in simulation mode")
        return self._stack

    def body(self) -> np.ndarray:
        if self._stack is not None:
            return np.array(self._stack[0])
        return np.array([[float(x) for x in row] for row in self._rows])

    def entry(self, i: int, j: int):
        '''1-based entry; a GrassmannNumber in simulation mode.'''
        if self._rows is not None:
            return self._rows[i - 1][j - 1]
        return gvec_to(self._stack[:, i - 1, j - 1], self.num_generators)

    def vector(self) -> List[Fraction]:
        return [x for row in self.rows for x in row]

    @property
    def is_zero(self) -> bool:
        if self._rows is not None:
            return not any(x for row in self._rows for x in row)
        return not self._stack.any()

    def with_parity(self, parity: ParityLike) -> "SuperMatrix":
        if self._rows is not None:
            return SuperMatrix(self.m, self.n, self._rows, parity)
        return SuperMatrix.from_stack(self.m, self.n, self._stack, self.num_generators, parity)

    def to_simulation(self, num_generators: int) -> "SuperMatrix":
        if self._stack is not None:
            if self.num_generators != num_generators:
                raise GeneratorCountError(f"matrix uses L={self.num_generators}, asked for L={num_generators}")
            return self
        return SuperMatrix.from_stack(self.m, self.n, stack_from_body(self.body(), num_generators),
                                      num_generators, self.parity)

    # ---- arithmetic ----
    def _aligned(self, other: "SuperMatrix") -> Tuple["SuperMatrix", "SuperMatrix"]:
        if not isinstance(other, SuperMatrix):
            raise TypeError(f"expected SuperMatrix, got {type(other).__name__}")
        if (self.m, self.n) != (other.m, other.n):
            raise ShapeError(f"({self.m}|{self.n}) vs ({other.m}|{other.n})")
        if self.mode == other.mode:
            if self.is_simulation and self.num_generators != other.num_generators:
                raise GeneratorCountError(f"L mismatch: {self.num_generators} vs {other.num_generators}")
            return self, other
        if self.is_simulation:
            return self, other.to_simulation(self.num_generators)
        return self.to_simulation(other.num_generators), other

    def _combine_parity(self, other: "SuperMatrix") -> ParityLike:
        return self.parity if self.parity == other.parity else MIXED

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        a, b = self._aligned(other)
        parity = a._combine_parity(b)
        if a.is_simulation:
            return SuperMatrix.from_stack(a.m, a.n, a._stack + b._stack, a.num_generators, parity)
        rows = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a._rows, b._rows)]
        return SuperMatrix(a.m, a.n, rows, parity)

    def __neg__(self) -> "SuperMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def scale(self, value) -> "SuperMatrix":
        if self.is_simulation:
            return SuperMatrix.from_stack(self.m, self.n, self._stack * float(value), self.num_generators, self.parity)
        value = Frac(value)
        return SuperMatrix(self.m, self.n, [[x * value for x in row] for row in self._rows], self.parity)

    def __mul__(self, value) -> "SuperMatrix":
        if isinstance(value, Number):
            return self.scale(value)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        a, b = self._aligned(other)
        if MIXED in (a.parity, b.parity):
            parity = MIXED
        else:
            parity = a.parity.plus(b.parity)
        if a.is_simulation:
            return SuperMatrix.from_stack(a.m, a.n, stack_matmul(a._stack, b._stack, a.num_generators),
                                          a.num_generators, parity)
        cols = list(zip(*b._rows))
        rows = [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a._rows]
        return SuperMatrix(a.m, a.n, rows, parity)

    def allclose(self, other: "SuperMatrix", atol: float = 1e-9) -> bool:
        a, b = self._aligned(other)
        if not a.is_simulation:
            return a == b
        return bool(np.allclose(a._stack, b._stack, rtol=0.0, atol=atol))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        if (self.m, self.n, self.mode) != (other.m, other.n, other.mode):
            return False
        if self.is_simulation:
            return self.num_generators == other.num_generators and np.array_equal(self._stack, other._stack)
        return self._rows == other._rows

    def __hash__(self) -> int:
        if self.is_simulation:
            return hash((self.m, self.n, self.num_generators, self._stack.tobytes()))
        return hash((self.m, self.n, self._rows))

    def __repr__(self) -> str:
        label = self.parity if self.parity == MIXED else self.parity.label
        if self.is_simulation:
            return f"SuperMatrix(({self.m}|{self.n}), {label}, L={self.num_generators}, body={self._stack[0].tolist()})"
        return f"SuperMatrix(({self.m}|{self.n}), {label}, {[[str(x) for x in r] for r in self._rows]})"


# ---- Public API ----
def super_bracket(A: SuperMatrix, B: SuperMatrix) -> SuperMatrix:
    '''AB - (-1)^{|A||B|} BA; the anticommutator when both are odd.'''
    if A.parity == MIXED or B.parity == MIXED:
        raise ParityError("super_bracket needs homogeneous matrices")
    ab = A @ B
    ba = B @ A
    out = ab + ba if (A.parity == Parity.ODD and B.parity == Parity.ODD) else ab - ba
    return out.with_parity(A.parity.plus(B.parity))


def supertrace(A: SuperMatrix):
    if A.is_simulation:
        t = stack_trace(A.stack[:, :A.m, :A.m]) - stack_trace(A.stack[:, A.m:, A.m:])
        return gvec_to(t, A.num_generators)
    rows = A.rows
    even = sum((rows[i][i] for i in range(A.m)), Fraction(0))
    odd = sum((rows[i][i] for i in range(A.m, A.size)), Fraction(0))
    return even - odd


def _dm(block) -> DomainMatrix:
    return DomainMatrix([[Frac2QQ(x) for x in row] for row in block], (len(block), len(block[0])), QQ)


def _berezinian_exact(A: SuperMatrix) -> Fraction:
    m, rows = A.m, A.rows
    a = [row[:m] for row in rows[:m]]
    b = [row[m:] for row in rows[:m]]
    c = [row[:m] for row in rows[m:]]
    d = [row[m:] for row in rows[m:]]
    if A.n == 0:
        return QQ2Frac(_dm(a).det())
    D = _dm(d)
    det_d = D.det()
    if det_d == 0:
        raise BerezinianUndefinedError("lower-right block is singular")
    if m == 0:
        return 1 / QQ2Frac(det_d)
    schur = _dm(a) - _dm(b) * D.inv() * _dm(c)
    return QQ2Frac(schur.det()) / QQ2Frac(det_d)


def _berezinian_stack(A: SuperMatrix) -> GrassmannNumber:
    L, m = A.num_generators, A.m
    X = A.stack
    a, b, c, d = X[:, :m, :m], X[:, :m, m:], X[:, m:, :m], X[:, m:, m:]
    try:
        det_d = gvec_to(stack_det(d, L), L)
        inv_d = stack_inv(d, L) if A.n else d
        inv_det_d = gvec_from(det_d.inverse())
    except NotInvertibleError:
        raise BerezinianUndefinedError("lower-right block is not body-invertible") from None
    if m == 0:
        return gvec_to(inv_det_d, L)
    schur = a - stack_matmul(stack_matmul(b, inv_d, L), c, L) if A.n else a
    return gvec_to(gvec_mul(stack_det(schur, L), inv_det_d, L), L)


def berezinian(A: SuperMatrix):
    '''
    Ber = det(A - B D^-1 C) / det(D) for [[A, B], [C, D]]; exact Fraction in analysis
    mode, GrassmannNumber in simulation mode.
    '''
    if A.parity == Parity.ODD:
        raise ParityError("Berezinian is defined for even matrices")
    if A.is_simulation:
        return _berezinian_stack(A)
    return _berezinian_exact(A)


def _check_finite(A: SuperMatrix, t: float) -> None:
    if not math.isfinite(t) or not np.isfinite(A.stack).all():
        raise NumericError("non-finite entries in matrix exponential input")


def sm_exp(A: SuperMatrix, t: float) -> SuperMatrix:
    '''exp(tA) by scaling to norm <= 1/2, a degree 12 series, then squaring back.'''
    if not A.is_simulation:
        raise ModeError("sm_exp needs a simulation-mode matrix, see SuperMatrix.to_simulation")
    t = float(t)
    _check_finite(A, t)
    L = A.num_generators
    M = A.stack * t
    norm = float(np.abs(M).sum(axis=0).sum(axis=1).max()) if M.size else 0.0
    squarings = 0 if norm <= EXP_SCALE_NORM else int(math.ceil(math.log2(norm / EXP_SCALE_NORM)))
    M = M / (2.0 ** squarings)
    result = stack_eye(L, A.size)
    term = result
    for k in range(1, EXP_TAYLOR_ORDER + 1):
        term = stack_matmul(term, M, L) / k
        result = result + term
    for _ in range(squarings):
        result = stack_matmul(result, result, L)
    if not np.isfinite(result).all():
        raise NumericError("matrix exponential overflowed")
    return SuperMatrix.from_stack(A.m, A.n, result, L, Parity.EVEN)


def _as_simulation(P: SuperMatrix, like: SuperMatrix) -> SuperMatrix:
    return P if P.is_simulation else P.to_simulation(like.num_generators)


def conjugate(A: SuperMatrix, t: float, P: SuperMatrix) -> SuperMatrix:
    '''e^{tA} P e^{-tA}'''
    out = sm_exp(A, t) @ _as_simulation(P, A) @ sm_exp(A, -t)
    return out.with_parity(P.parity)


def left_flow(A: SuperMatrix, t: float, P: SuperMatrix) -> SuperMatrix:
    '''e^{tA} P'''
    return (sm_exp(A, t) @ _as_simulation(P, A)).with_parity(P.parity)


def right_flow(P: SuperMatrix, B: SuperMatrix, s: float) -> SuperMatrix:
    '''P e^{sB}'''
    return (_as_simulation(P, B) @ sm_exp(B, s)).with_parity(P.parity)
