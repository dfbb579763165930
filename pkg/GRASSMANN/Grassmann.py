'''
Description: Real Grassmann algebra R_S[L] on L anticommuting generators x1..xL.
Elements are maps from strictly increasing generator keys to coefficients; the empty
key carries the body. Coefficients are exact (int / Fraction) in analysis paths and
floats in simulation paths.
'''
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import IntEnum
from numbers import Number
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from COMMON.Cast import Frac
from COMMON.Description import DEFAULT_GENERATORS, GENERATOR_PREFIX, MIXED, WEDGE
from COMMON.Errors import GeneratorCountError, NotInvertibleError, ParityError
from GRASSMANN.Kernel.sign import key_to_mask, mask_to_key, merge_sign

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def plus(self, other: "Parity") -> "Parity":
        return Parity((int(self) + int(other)) % 2)

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text) -> "Parity":
        if isinstance(text, Parity):
            return text
        if isinstance(text, int) and not isinstance(text, bool) and text in (0, 1):
            return cls(text)
        try:
            return cls[str(text).strip().upper()]
        except KeyError:
            raise ParityError(f"unknown parity {text!r}") from None


def _check_key(key, num_generators: int) -> Key:
    key = tuple(key)
    prev = 0
    for i in key:
        if not isinstance(i, int) or isinstance(i, bool):
            raise ValueError(f"generator index must be an integer, got {i!r}")
        if i <= prev:
            raise ValueError(f"key {key} is not strictly increasing")
        if i > num_generators:
            raise GeneratorCountError(f"generator {i} exceeds L={num_generators}")
        prev = i
    return key


class GrassmannNumber:
    """Immutable element of R_S[L] kept in canonical form (no zero coefficients)."""

    __slots__ = ("_num_generators", "_terms")

    def __init__(self, num_generators: int = DEFAULT_GENERATORS, terms: Optional[Mapping[Iterable[int], object]] = None) -> None:
        if num_generators < 0:
            raise GeneratorCountError("L must be non-negative")
        clean: Dict[Key, object] = {}
        for key, coef in (terms or {}).items():
            key = _check_key(key, num_generators)
            if coef != 0:
                clean[key] = coef
        self._num_generators = num_generators
        self._terms = clean

    # ---- construction helpers ----
    @classmethod
    def scalar(cls, value, num_generators: int = DEFAULT_GENERATORS) -> "GrassmannNumber":
        return cls(num_generators, {(): value})

    @classmethod
    def generator(cls, index: int, num_generators: int = DEFAULT_GENERATORS, coef=1) -> "GrassmannNumber":
        return cls(num_generators, {(index,): coef})

    @classmethod
    def monomial(cls, key: Iterable[int], num_generators: int = DEFAULT_GENERATORS, coef=1) -> "GrassmannNumber":
        return cls(num_generators, {tuple(key): coef})

    # ---- read access ----
    @property
    def num_generators(self) -> int:
        return self._num_generators

    @property
    def terms(self) -> Dict[Key, object]:
        return dict(self._terms)

    @property
    def body(self):
        return self._terms.get((), 0)

    @property
    def soul(self) -> "GrassmannNumber":
        return GrassmannNumber(self._num_generators, {k: c for k, c in self._terms.items() if k})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, key: Iterable[int]):
        return self._terms.get(tuple(key), 0)

    # ---- arithmetic ----
    def _coerce(self, other) -> "GrassmannNumber":
        if isinstance(other, GrassmannNumber):
            return other
        if isinstance(other, Number):
            return GrassmannNumber.scalar(other, self._num_generators)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return g_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "GrassmannNumber":
        return GrassmannNumber(self._num_generators, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return g_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        if isinstance(other, GrassmannNumber):
            return g_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def scale(self, value) -> "GrassmannNumber":
        return GrassmannNumber(self._num_generators, {k: c * value for k, c in self._terms.items()})

    def inverse(self) -> "GrassmannNumber":
        '''
        b^-1 * sum_k (-s/b)^k for x = b + s; the series stops at k = L since
        the soul is nilpotent.
        '''
        b = self.body
        if b == 0:
            raise NotInvertibleError(f"{self} has zero body")
        inv_b = 1.0 / b if isinstance(b, float) else 1 / Frac(b)
        step = self.soul.scale(-inv_b)
        total = GrassmannNumber.scalar(1, self._num_generators)
        power = total
        for _ in range(self._num_generators):
            power = g_mul(power, step)
            if power.is_zero:
                break
            total = g_add(total, power)
        return total.scale(inv_b)

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = GrassmannNumber.scalar(other, self._num_generators)
        if not isinstance(other, GrassmannNumber):
            return NotImplemented
        return self._num_generators == other._num_generators and self._terms == other._terms

    def __hash__(self) -> int:
        # pure scalars compare equal to plain numbers, so they hash like them
        if not self._terms.keys() - {()}:
            return hash(self.body)
        return hash((self._num_generators, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"GrassmannNumber(L={self._num_generators}, {self})"

    def __str__(self) -> str:
        return to_str(self)


def _check_same_l(a: GrassmannNumber, b: GrassmannNumber) -> None:
    if a.num_generators != b.num_generators:
        raise GeneratorCountError(f"L mismatch: {a.num_generators} vs {b.num_generators}")


def g_mul(a: GrassmannNumber, b: GrassmannNumber) -> GrassmannNumber:
    _check_same_l(a, b)
    out: Dict[int, object] = {}
    for ka, ca in a._terms.items():
        ma = key_to_mask(ka)
        for kb, cb in b._terms.items():
            mb = key_to_mask(kb)
            s = merge_sign(ma, mb)
            if s:
                out[ma | mb] = out.get(ma | mb, 0) + s * ca * cb
    return GrassmannNumber(a.num_generators, {mask_to_key(m): c for m, c in out.items()})


def g_add(a: GrassmannNumber, b: GrassmannNumber) -> GrassmannNumber:
    _check_same_l(a, b)
    out = dict(a._terms)
    for k, c in b._terms.items():
        out[k] = out.get(k, 0) + c
    return GrassmannNumber(a.num_generators, out)


def body(a: GrassmannNumber):
    return a.body


def parity_of(a: GrassmannNumber) -> Union[Parity, str]:
    degrees = {len(k) % 2 for k in a._terms}
    if not degrees:
        return Parity.EVEN
    if len(degrees) > 1:
        return MIXED
    return Parity(degrees.pop())


def to_str(a: GrassmannNumber) -> str:
    '''
    Eg: 3 + 2*x1^x2, -x1 + 1/2*x1^x2^x3
    '''
    if a.is_zero:
        return "0"
    parts: List[str] = []
    for key in sorted(a._terms, key=lambda k: (len(k), k)):
        coef = a._terms[key]
        if not key:
            term = repr(coef) if isinstance(coef, float) else str(coef)
        else:
            mono = WEDGE.join(f"{GENERATOR_PREFIX}{i}" for i in key)
            if coef == 1:
                term = mono
            elif coef == -1:
                term = "-" + mono
            else:
                term = f"{repr(coef) if isinstance(coef, float) else coef}*{mono}"
        if parts and term.startswith("-"):
            parts.append("- " + term[1:])
        elif parts:
            parts.append("+ " + term)
        else:
            parts.append(term)
    return " ".join(parts)


@dataclass(frozen=True)
class SuperPoint:
    """Point (x; theta) of R_S^{m|n}: m even and n odd Grassmann coordinates."""

    even_coords: Tuple[GrassmannNumber, ...]
    odd_coords: Tuple[GrassmannNumber, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "even_coords", tuple(self.even_coords))
        object.__setattr__(self, "odd_coords", tuple(self.odd_coords))
        coords = self.even_coords + self.odd_coords
        if len({c.num_generators for c in coords}) > 1:
            raise GeneratorCountError("coordinates use different generator counts")
        for i, c in enumerate(self.even_coords):
            if parity_of(c) != Parity.EVEN:
                raise ParityError(f"even coordinate {i + 1} is not even: {c}")
        for i, c in enumerate(self.odd_coords):
            if not c.is_zero and parity_of(c) != Parity.ODD:
                raise ParityError(f"odd coordinate {i + 1} is not odd: {c}")

    @property
    def m(self) -> int:
        return len(self.even_coords)

    @property
    def n(self) -> int:
        return len(self.odd_coords)

    @classmethod
    def from_reals(cls, even, odd=(), num_generators: int = DEFAULT_GENERATORS) -> "SuperPoint":
        '''Point whose even coordinates are plain scalars and odd ones are given Grassmann numbers.'''
        return cls(tuple(GrassmannNumber.scalar(v, num_generators) for v in even), tuple(odd))


def body_point(p: SuperPoint) -> List:
    return [c.body for c in p.even_coords]
