'''
Description: Bracket-generated subalgebras and the ad(X)-invariant hull <X|h>.
The hull runs h_i = h_{i-1} + ad^i(X)(h) on the generators of h until the graded
dimension stops growing, then closes the result under the bracket.
'''
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from COMMON.Errors import PreconditionError
from LSA.Algebra import AlgebraElement, LieSuperalgebra, bracket
from LSA.Subspace import GradedSubspace, subspace_span
from CONTROL.Drift import DriftAction, as_drift
from SUPERMAT.SuperMatrix import SuperMatrix

logger = logging.getLogger(__name__)

Drift = Union[AlgebraElement, SuperMatrix, DriftAction]


@dataclass(frozen=True)
class HullStep:
    index: int
    added: Tuple[AlgebraElement, ...]
    dim: Tuple[int, int]


@dataclass
class HullTrace:
    steps: List[HullStep] = field(default_factory=list)
    terminated_at: int = 0
    closure_dim: Tuple[int, int] = (0, 0)

    def as_rows(self) -> List[Dict]:
        return [{"step": s.index, "added": [str(v) for v in s.added], "dim": list(s.dim)} for s in self.steps]


def _grow(space: GradedSubspace, candidates: Sequence[AlgebraElement]) -> Tuple[GradedSubspace, List[AlgebraElement]]:
    '''Add the homogeneous parts of candidates that are new to space.'''
    added = []
    for v in candidates:
        for part in v.homogeneous_parts():
            if not space.contains(part):
                space = space.extended([part])
                added.append(part)
    return space, added


# ---- Public API ----
def lsa_span(gens: Sequence[AlgebraElement], algebra: Optional[LieSuperalgebra] = None) -> GradedSubspace:
    '''Smallest bracket-closed subspace containing gens.'''
    space = subspace_span(gens, algebra)
    work = space.elements()
    i = 0
    while i < len(work):
        x = work[i]
        for j in range(i + 1):
            space, added = _grow(space, [bracket(x, work[j])])
            work.extend(added)
        i += 1
    logger.debug("[HULL] lsa_span of %d generators has dimension %s", len(gens), space.dim)
    return space


def is_bracket_closed(space: GradedSubspace) -> bool:
    basis = space.elements()
    return all(space.contains(bracket(u, v)) for i, u in enumerate(basis) for v in basis[:i + 1])


def ad_apply(X: Drift, v: AlgebraElement, times: int) -> AlgebraElement:
    if times < 0:
        raise PreconditionError(f"ad power must be non-negative, got {times}")
    drift = as_drift(X, v.algebra)
    for _ in range(times):
        v = drift.apply(v)
    return v


def ad_hull(X: Drift, h: GradedSubspace) -> Tuple[GradedSubspace, HullTrace]:
    '''<X|h>: smallest ad(X)-invariant subalgebra containing the bracket-closed h.'''
    if not is_bracket_closed(h):
        raise PreconditionError("ad_hull needs a bracket-closed subspace, build it with lsa_span")
    drift = as_drift(X, h.algebra)
    trace = HullTrace()
    gens = h.elements()
    space = h
    power = gens
    trace.steps.append(HullStep(0, tuple(gens), h.dim))
    limit = h.algebra.total_dim
    for i in range(1, limit + 2):
        power = [drift.apply(v) for v in power]
        space, added = _grow(space, power)
        trace.steps.append(HullStep(i, tuple(added), space.dim))
        logger.debug("[HULL] step %d added %d, dimension %s", i, len(added), space.dim)
        if not added:
            break
        trace.terminated_at = i
    hull = lsa_span(space.elements(), h.algebra)
    trace.closure_dim = hull.dim
    return hull, trace


def hull_by_powers(X: Drift, gens: Sequence[AlgebraElement], p: int, algebra: Optional[LieSuperalgebra] = None) -> GradedSubspace:
    '''lsa_span of ad^i(X)(v) for v in gens and 0 <= i <= p, computed directly.'''
    drift = as_drift(X, algebra)
    family = []
    for v in gens:
        for _ in range(p + 1):
            family.append(v)
            v = drift.apply(v)
    return lsa_span(family, algebra or drift.algebra)


def semidirect_bracket(X: Drift, a: Tuple[AlgebraElement, object], b: Tuple[AlgebraElement, object]) -> AlgebraElement:
    '''
    Bracket on <X|h> + RX with (Y, w) standing for Y + wX:
    [Y1 + w1 X, Y2 + w2 X] = [Y1, Y2] + w1 ad(X)Y2 - w2 ad(X)Y1.
    The X component of a bracket always vanishes, so only the <X|h> part is returned.
    '''
    drift = as_drift(X, a[0].algebra)
    (y1, w1), (y2, w2) = a, b
    return bracket(y1, y2) + drift.apply(y2) * w1 - drift.apply(y1) * w2


def bracket_containment_check(X: Drift, C: Sequence[AlgebraElement], hull: GradedSubspace) -> bool:
    '''Brackets of dynamics elements X + sum u_i c_i land in the hull.'''
    drift = as_drift(X, hull.algebra)
    zero = hull.algebra.zero()
    for i, ci in enumerate(C):
        if not hull.contains(ci):
            return False
        if not hull.contains(semidirect_bracket(drift, (zero, 1), (ci, 0))):
            return False
        for cj in C[:i + 1]:
            if not hull.contains(semidirect_bracket(drift, (ci, 0), (cj, 0))):
                return False
    return True
