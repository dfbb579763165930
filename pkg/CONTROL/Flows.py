'''
Description: Matrix-level shadow of the flow statements and a desk-scale simulator.
A linear system moves a group element P by
    dP/dt = AP - PA + P U(t),   U = sum u_i Y^i + sum nu_j Xi^j
with piecewise constant inputs; segments are integrated by fixed-step RK4 on the
Grassmann coefficient stacks and composed in schedule order.
'''
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, IO, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from COMMON.Config import Settings
from COMMON.Description import FLOW_SAMPLE_TIMES, FLOW_TOLERANCE, STEPS_PER_UNIT_TIME
from COMMON.Errors import (
    ArityError,
    GeneratorCountError,
    NumericError,
    ParityError,
    PreconditionError,
    ScheduleError,
    ShapeError,
)
from CONTROL.Drift import ad_columns
from CONTROL.Rank import SystemSpec
from GRASSMANN.Grassmann import GrassmannNumber, Parity, SuperPoint, parity_of
from LSA.Algebra import LieSuperalgebra
from LSA.Subspace import GradedSubspace
from SUPERMAT.Stack import gvec_from, stack_matmul, stack_scaled
from SUPERMAT.SuperMatrix import SuperMatrix, conjugate, super_bracket

logger = logging.getLogger(__name__)


#========[ SCHEDULES ]===============================================================
@dataclass(frozen=True)
class Segment:
    duration: float
    even_inputs: Tuple[float, ...] = ()
    odd_inputs: Tuple[GrassmannNumber, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "even_inputs", tuple(float(u) for u in self.even_inputs))
        object.__setattr__(self, "odd_inputs", tuple(self.odd_inputs))
        if not (self.duration > 0) or not math.isfinite(self.duration):
            raise ScheduleError(f"segment duration must be positive, got {self.duration}")
        for j, nu in enumerate(self.odd_inputs):
            if not nu.is_zero and parity_of(nu) != Parity.ODD:
                raise ParityError(f"odd input {j + 1} is not odd: {nu}")


@dataclass(frozen=True)
class ControlSchedule:
    """Piecewise constant inputs (u(t), nu(t)) in R^{k|l}."""

    segments: Tuple[Segment, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        arities = {(len(s.even_inputs), len(s.odd_inputs)) for s in self.segments}
        if len(arities) > 1:
            raise ArityError(f"segments disagree on input arity: {sorted(arities)}")

    @property
    def horizon(self) -> float:
        return sum(s.duration for s in self.segments)

    def check_arity(self, k: int, l: int) -> None:
        for i, s in enumerate(self.segments):
            if (len(s.even_inputs), len(s.odd_inputs)) != (k, l):
                raise ArityError(f"segment {i} has {len(s.even_inputs)}|{len(s.odd_inputs)} inputs, "
                                 f"system takes {k}|{l}")


@dataclass
class Trajectory:
    samples: List[Tuple[float, SuperMatrix]] = field(default_factory=list)

    def __post_init__(self) -> None:
        times = [t for t, _ in self.samples]
        if times and times[0] != 0:
            raise ScheduleError("trajectory must start at t = 0")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ScheduleError("trajectory times must be strictly increasing")

    @property
    def times(self) -> List[float]:
        return [t for t, _ in self.samples]

    @property
    def final(self) -> SuperMatrix:
        return self.samples[-1][1]

    def write_csv(self, target: Union[str, IO]) -> None:
        '''Time column plus the row-major body entries, under a "# m=.., n=.., L=.." header.'''
        P0 = self.samples[0][1]
        size = P0.size
        names = ["t"] + [f"P{i + 1}_{j + 1}" for i in range(size) for j in range(size)]
        data = np.array([[t] + list(P.body().ravel()) for t, P in self.samples])
        header = f"m={P0.m}, n={P0.n}, L={P0.num_generators}\n" + ",".join(names)
        np.savetxt(target, data, delimiter=",", header=header, comments="# ", fmt="%.17g")


#========[ INVARIANCE CHECKS ]=======================================================
@dataclass
class InvarianceReport:
    ok: bool
    witnesses: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_ad_invariance(A: SuperMatrix, g: LieSuperalgebra) -> InvarianceReport:
    '''[A, Y] lies in the realized span for every basis matrix Y.'''
    witnesses = [nm for nm, coords in ad_columns(A, g) if coords is None]
    if witnesses:
        logger.debug("[SIM] ad(A) leaves %s through %s", g.name, witnesses)
    return InvarianceReport(not witnesses, witnesses)


def _flat_bodies(mats: Sequence[SuperMatrix]) -> np.ndarray:
    return np.array([m.body().ravel() for m in mats]).T


def check_hull_flow_invariance(A: SuperMatrix, hull: GradedSubspace) -> InvarianceReport:
    '''
    ad(A)(hull) within hull exactly, then e^{tA} Y e^{-tA} within the realized hull
    span for the sampled times, up to FLOW_TOLERANCE.
    '''
    g = hull.algebra
    if g.realization is None:
        raise PreconditionError(f"{g.name} has no matrix realization")
    witnesses = []
    basis = hull.elements()
    for v in basis:
        coords = g.coordinates(super_bracket(A, g.realize(v)))
        if coords is None or not hull.contains(coords):
            witnesses.append(f"ad: {v}")
    if witnesses:
        return InvarianceReport(False, witnesses)
    if not basis:
        return InvarianceReport(True, [])
    mats = [g.realize(v) for v in basis]
    span = _flat_bodies(mats)
    A_sim = A.to_simulation(0)
    for t in FLOW_SAMPLE_TIMES:
        for v, Y in zip(basis, mats):
            target = conjugate(A_sim, t, Y).body().ravel()
            coef, *_ = np.linalg.lstsq(span, target, rcond=None)
            residual = float(np.linalg.norm(span @ coef - target))
            if residual > FLOW_TOLERANCE * max(1.0, float(np.linalg.norm(target))):
                witnesses.append(f"t={t}: {v}")
    return InvarianceReport(not witnesses, witnesses)


def _sample_points(size: int) -> Tuple[List[Fraction], List[Fraction]]:
    return ([Fraction(i + 1) for i in range(size)], [Fraction(3 - 2 * i, 2) for i in range(size)])


def check_linear_field_normalizer(A: Optional[SuperMatrix] = None, q: Union[SuperPoint, Sequence, None] = None, *,
                                  field: Optional[Callable[[Sequence[sympy.Symbol]], Sequence]] = None,
                                  samples: Optional[Sequence[Sequence]] = None) -> bool:
    '''
    The field p -> A(p) + q (or a custom field) brackets every constant field b into a
    constant field, checked by evaluating J_F(p) b at two distinct points. Odd
    coordinates are formal symbols here.
    '''
    if A is None and field is None:
        raise PreconditionError("give a linear map A or a field")
    size = A.size if A is not None else None
    if A is not None:
        p = sympy.symbols(f"p1:{size + 1}")
        offset = [0] * size
        if isinstance(q, SuperPoint):
            offset = [c.body for c in q.even_coords] + [c.body for c in q.odd_coords]
        elif q is not None:
            offset = list(q)
        if len(offset) != size:
            raise ShapeError(f"offset q has {len(offset)} coordinates, expected {size}")
        M = sympy.Matrix(A.rows)
        F = M * sympy.Matrix(p) + sympy.Matrix([sympy.nsimplify(x) for x in offset])
    else:
        sample_len = len(samples[0]) if samples else None
        if sample_len is None:
            raise PreconditionError("a custom field needs explicit sample vectors")
        size = sample_len
        p = sympy.symbols(f"p1:{size + 1}")
        F = sympy.Matrix(list(field(p)))
    J = F.jacobian(p)
    if samples is None:
        samples = [[int(i == j) for j in range(size)] for i in range(size)]
    a, b = _sample_points(size)
    for vec in samples:
        col = sympy.Matrix(list(vec))
        expr = J * col
        at_a = expr.subs(dict(zip(p, a)))
        at_b = expr.subs(dict(zip(p, b)))
        if sympy.simplify(at_a - at_b) != sympy.zeros(size, 1):
            logger.debug("[SIM] bracket with %s depends on the base point", list(vec))
            return False
        if A is not None and sympy.simplify(at_a - sympy.Matrix(A.rows) * col) != sympy.zeros(size, 1):
            return False
    return True


#========[ SIMULATION ]==============================================================
def _control_stacks(sys: SystemSpec) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    g = sys.algebra
    even = [g.realize(c).body() for c in sys.even_controls]
    odd = [g.realize(c).body() for c in sys.odd_controls]
    return even, odd


def _rk4(P: np.ndarray, A: np.ndarray, U: np.ndarray, h: float, steps: int, L: int) -> np.ndarray:
    def rhs(X: np.ndarray) -> np.ndarray:
        return stack_matmul(A, X, L) - stack_matmul(X, A, L) + stack_matmul(X, U, L)

    for _ in range(steps):
        k1 = rhs(P)
        k2 = rhs(P + 0.5 * h * k1)
        k3 = rhs(P + 0.5 * h * k2)
        k4 = rhs(P + h * k3)
        P = P + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return P


def simulate(sys: SystemSpec, start: SuperMatrix, sched: ControlSchedule, L: Optional[int] = None,
             steps_per_segment: Optional[int] = None) -> Trajectory:
    g = sys.algebra
    if g.realization is None:
        raise PreconditionError(f"{g.name} has no matrix realization to simulate on")
    A = sys.drift_matrix()
    if A is None:
        raise PreconditionError("drift has no matrix form")
    sched.check_arity(sys.k, sys.l)
    settings = Settings.from_env()
    if L is None:
        L = start.num_generators if start.is_simulation else settings.generators
    steps_per_segment = steps_per_segment or settings.steps_per_segment
    for s in sched.segments:
        for nu in s.odd_inputs:
            if nu.num_generators != L:
                raise GeneratorCountError(f"odd input uses L={nu.num_generators}, session uses L={L}")
    P_mat = start.to_simulation(L)
    if (P_mat.m, P_mat.n) != (A.m, A.n):
        raise ShapeError(f"start is ({P_mat.m}|{P_mat.n}), drift is ({A.m}|{A.n})")
    A_stack = A.to_simulation(L).stack
    even, odd = _control_stacks(sys)
    one = gvec_from(GrassmannNumber.scalar(1, L))
    P = np.array(P_mat.stack)
    t = 0.0
    samples = [(0.0, P_mat)]
    for i, s in enumerate(sched.segments):
        U = np.zeros_like(P)
        for u, Y in zip(s.even_inputs, even):
            U = U + stack_scaled(one * u, Y)
        for nu, Xi in zip(s.odd_inputs, odd):
            U = U + stack_scaled(gvec_from(nu), Xi)
        steps = max(steps_per_segment, math.ceil(STEPS_PER_UNIT_TIME * s.duration))
        P = _rk4(P, A_stack, U, s.duration / steps, steps, L)
        if not np.isfinite(P).all():
            raise NumericError(f"state left the finite range in segment {i}")
        t += s.duration
        samples.append((t, SuperMatrix.from_stack(P_mat.m, P_mat.n, P, L, start.parity)))
        logger.debug("[SIM] segment %d done at t=%g with %d steps", i, t, steps)
    return Trajectory(samples)


def reachable_sample(sys: SystemSpec, start: SuperMatrix, n_schedules: int, horizon: float,
                     seed: Optional[int] = None, segments: int = 3, L: Optional[int] = None) -> List[SuperMatrix]:
    '''
    Endpoints of random forward-time schedules. Durations split the horizon, even
    inputs are uniform in [-1, 1] and each odd input is a random multiple of one
    generator. Diagnostic only.
    '''
    settings = Settings.from_env()
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    if L is None:
        L = start.num_generators if start.is_simulation else settings.generators
    if not math.isfinite(horizon) or horizon < 0:
        raise ScheduleError(f"horizon must be finite and non-negative, got {horizon}")
    if horizon == 0:
        # nothing moves in zero time
        P0 = start if start.is_simulation else start.to_simulation(L)
        return [P0] * n_schedules
    out = []
    for _ in range(n_schedules):
        durations = rng.uniform(1e-3, 1.0, segments)
        durations = durations * (horizon / durations.sum())
        segs = []
        for d in durations:
            even = rng.uniform(-1.0, 1.0, sys.k)
            odd = []
            for _ in range(sys.l):
                if L == 0:
                    odd.append(GrassmannNumber(0))
                else:
                    odd.append(GrassmannNumber.generator(int(rng.integers(1, L + 1)), L, float(rng.uniform(-1.0, 1.0))))
            segs.append(Segment(float(d), tuple(even), tuple(odd)))
        out.append(simulate(sys, start, ControlSchedule(tuple(segs)), L).final)
    logger.info("[SIM] sampled %d endpoints over horizon %g", len(out), horizon)
    return out
