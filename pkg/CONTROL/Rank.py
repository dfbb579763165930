'''
Description: Controllability decisions for linear systems
    X + sum u_i Y^i + sum nu_j Xi^j
LSARC (superalgebra span of C and its ad(X)-orbit, necessary for transitivity),
the super ad-rank condition (linear span of the same family, sufficient for local
controllability) and the extended Kalman rank condition on R^{m|n}.
'''
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from COMMON.Description import (
    ANNOTATIONS,
    LOCALLY_CONTROLLABLE,
    NOT_TRANSITIVE,
    TRANSITIVE_NOT_DECIDED,
)
from COMMON.Errors import AlgebraMismatchError, ParityError, PreconditionError, ShapeError
from CONTROL.Closure import HullTrace, ad_hull, lsa_span
from CONTROL.Drift import DriftAction, as_drift
from GRASSMANN.Grassmann import Parity
from LSA.Algebra import AlgebraElement, LieSuperalgebra
from LSA.Subspace import GradedSubspace, subspace_span
from SUPERMAT.SuperMatrix import SuperMatrix

logger = logging.getLogger(__name__)

Dim = Tuple[int, int]


@dataclass(frozen=True)
class SystemSpec:
    """Drift X plus even controls Y^i and odd controls Xi^j on one algebra."""

    algebra: LieSuperalgebra
    drift: Union[AlgebraElement, SuperMatrix, DriftAction]
    even_controls: Tuple[AlgebraElement, ...] = ()
    odd_controls: Tuple[AlgebraElement, ...] = ()
    name: str = "system"

    def __post_init__(self) -> None:
        object.__setattr__(self, "even_controls", tuple(self.even_controls))
        object.__setattr__(self, "odd_controls", tuple(self.odd_controls))
        if not self.even_controls and not self.odd_controls:
            raise ShapeError("a system needs at least one control vector")
        for slot, controls, parity in (("even", self.even_controls, Parity.EVEN), ("odd", self.odd_controls, Parity.ODD)):
            for i, c in enumerate(controls):
                if c.algebra is not self.algebra:
                    raise AlgebraMismatchError(f"{slot} control {i} belongs to {c.algebra.name}")
                if not c.is_zero and c.parity != parity:
                    raise ParityError(f"{slot} control {i} ({c}) is not {parity.label}")
        drift = self.drift
        if isinstance(drift, (AlgebraElement, SuperMatrix)) and drift.parity != Parity.EVEN:
            raise ParityError("drift must be even")
        if isinstance(drift, (AlgebraElement, DriftAction)) and drift.algebra is not self.algebra:
            raise AlgebraMismatchError("drift acts on another algebra")

    @property
    def k(self) -> int:
        return len(self.even_controls)

    @property
    def l(self) -> int:
        return len(self.odd_controls)

    @property
    def controls(self) -> Tuple[AlgebraElement, ...]:
        return self.even_controls + self.odd_controls

    @cached_property
    def drift_action(self) -> DriftAction:
        return as_drift(self.drift, self.algebra)

    def drift_matrix(self) -> Optional[SuperMatrix]:
        if isinstance(self.drift, SuperMatrix):
            return self.drift
        return self.drift_action.matrix


@dataclass(frozen=True)
class Verdict:
    lsarc_holds: bool
    ad_rank_holds: bool
    classification: str
    lsarc_dim: Dim
    ad_rank_dim: Dim
    ambient_dim: Dim
    hull_trace: HullTrace
    hull_dim: Dim = (0, 0)
    p: int = 0
    lsarc_witnesses: Tuple[str, ...] = ()
    ad_rank_witnesses: Tuple[str, ...] = ()
    system: str = ""
    algebra: str = ""

    @property
    def annotation(self) -> str:
        return ANNOTATIONS[self.classification]

    def total_reading(self) -> Dict[str, bool]:
        '''Same tests read against the scalar total dimension.'''
        total = sum(self.ambient_dim)
        return {"lsarc": sum(self.lsarc_dim) == total, "ad_rank": sum(self.ad_rank_dim) == total}

    def to_report(self) -> Dict:
        total = self.total_reading()
        return {
            "system": self.system,
            "algebra": self.algebra,
            "ambient_dim": list(self.ambient_dim),
            "p": self.p,
            "lsarc": {"holds": self.lsarc_holds, "dim": list(self.lsarc_dim), "total_reading": total["lsarc"]},
            "ad_rank": {"holds": self.ad_rank_holds, "dim": list(self.ad_rank_dim), "total_reading": total["ad_rank"]},
            "classification": self.classification,
            "annotation": self.annotation,
            "witnesses": {"lsarc": list(self.lsarc_witnesses), "ad_rank": list(self.ad_rank_witnesses)},
            "hull_trace": {
                "steps": self.hull_trace.as_rows(),
                "terminated_at": self.hull_trace.terminated_at,
                "hull_dim": list(self.hull_dim),
            },
        }


def ad_power_bound(algebra: LieSuperalgebra, p_cap: Optional[int] = None) -> int:
    '''Highest ad power used: total dimension minus one, optionally capped.'''
    p = max(algebra.total_dim - 1, 0)
    if p_cap is not None:
        if p_cap < 0:
            raise PreconditionError(f"p_cap must be non-negative, got {p_cap}")
        p = min(p, p_cap)
    return p


def ad_family(sys: SystemSpec, p: int) -> List[AlgebraElement]:
    '''ad^i(X)(c) for every control c and 0 <= i <= p.'''
    drift = sys.drift_action
    family = []
    for c in sys.controls:
        v = c
        for _ in range(p + 1):
            family.append(v)
            v = drift.apply(v)
    return family


def lsarc_space(sys: SystemSpec, p_cap: Optional[int] = None) -> GradedSubspace:
    return lsa_span(ad_family(sys, ad_power_bound(sys.algebra, p_cap)), sys.algebra)


def ad_rank_space(sys: SystemSpec, p_cap: Optional[int] = None) -> GradedSubspace:
    return subspace_span(ad_family(sys, ad_power_bound(sys.algebra, p_cap)), sys.algebra)


# ---- Public API ----
def lsarc(sys: SystemSpec, p_cap: Optional[int] = None) -> Tuple[bool, Dim]:
    space = lsarc_space(sys, p_cap)
    return space.is_full, space.dim


def ad_rank(sys: SystemSpec, p_cap: Optional[int] = None) -> Tuple[bool, Dim]:
    space = ad_rank_space(sys, p_cap)
    return space.is_full, space.dim


def _check_columns(A: SuperMatrix, cols: Sequence[Sequence], parity: Parity) -> None:
    for idx, col in enumerate(cols):
        if len(col) != A.size:
            raise ShapeError(f"column {idx} has {len(col)} entries, expected {A.size}")
        for i, x in enumerate(col):
            if x and (i < A.m) != (parity == Parity.EVEN):
                raise ParityError(f"{parity.label} column {idx} has a component in the other block")


def kalman_system(A: SuperMatrix, even_cols: Sequence[Sequence], odd_cols: Sequence[Sequence],
                  algebra: Optional[LieSuperalgebra] = None) -> SystemSpec:
    '''Superspace system: translation algebra of R^{m|n} with linear drift p -> Ap.'''
    _check_columns(A, even_cols, Parity.EVEN)
    _check_columns(A, odd_cols, Parity.ODD)
    drift = DriftAction.from_linear_map(A, algebra)
    g = drift.algebra
    return SystemSpec(g, drift, tuple(g.vector(c) for c in even_cols), tuple(g.vector(c) for c in odd_cols), "kalman")


def kalman_subspace(A: SuperMatrix, even_cols: Sequence[Sequence], odd_cols: Sequence[Sequence],
                    algebra: Optional[LieSuperalgebra] = None) -> GradedSubspace:
    '''Column space of [B, AB, ..., A^{m+n-1}B], columns kept in their parity.'''
    _check_columns(A, even_cols, Parity.EVEN)
    _check_columns(A, odd_cols, Parity.ODD)
    drift = DriftAction.from_linear_map(A, algebra)
    g = drift.algebra
    family = []
    for col in list(even_cols) + list(odd_cols):
        v = g.vector(col)
        for _ in range(A.size):
            family.append(v)
            v = drift.apply(v)
    return subspace_span(family, g)


def kalman_rank(A: SuperMatrix, even_cols: Sequence[Sequence], odd_cols: Sequence[Sequence]) -> Tuple[bool, Dim]:
    space = kalman_subspace(A, even_cols, odd_cols)
    return space.is_full, space.dim


def decide(sys: SystemSpec, p_cap: Optional[int] = None) -> Verdict:
    p = ad_power_bound(sys.algebra, p_cap)
    family = ad_family(sys, p)
    lsa_space = lsa_span(family, sys.algebra)
    lin_space = subspace_span(family, sys.algebra)
    hull, trace = ad_hull(sys.drift_action, lsa_span(sys.controls, sys.algebra))
    lsarc_ok = lsa_space.is_full
    ad_ok = lin_space.is_full
    if ad_ok:
        classification = LOCALLY_CONTROLLABLE
    elif lsarc_ok:
        classification = TRANSITIVE_NOT_DECIDED
    else:
        classification = NOT_TRANSITIVE
    verdict = Verdict(
        lsarc_holds=lsarc_ok,
        ad_rank_holds=ad_ok,
        classification=classification,
        lsarc_dim=lsa_space.dim,
        ad_rank_dim=lin_space.dim,
        ambient_dim=sys.algebra.dim,
        hull_trace=trace,
        hull_dim=hull.dim,
        p=p,
        lsarc_witnesses=tuple(lsa_space.missing_basis_elements()),
        ad_rank_witnesses=tuple(lin_space.missing_basis_elements()),
        system=sys.name,
        algebra=sys.algebra.name,
    )
    logger.info("[RANK] %s: lsarc %s %s, ad-rank %s %s -> %s", sys.name, lsarc_ok, lsa_space.dim,
                ad_ok, lin_space.dim, classification)
    return verdict
