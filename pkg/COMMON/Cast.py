'''
Description: This Library provide casting functions between python numbers,
exact rationals, sympy QQ elements and the [num, den] pairs used in spec files
'''
from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Sequence, Tuple

from sympy import QQ


def Frac(value) -> Fraction:
    '''
    Convert a number into an exact Fraction
    Eg: 3 -> Fraction(3, 1), "1/2" -> Fraction(1, 2), [1, 2] -> Fraction(1, 2)
    Floats are converted exactly (0.5 -> 1/2, 0.1 -> its binary value).
    '''
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (list, tuple)):
        return Pair2Frac(value)
    if isinstance(value, (int, float, str, Rational)):
        return Fraction(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        # sympy PythonMPQ / gmpy mpq
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot read {value!r} as a rational number")


def Pair2Frac(pair: Sequence) -> Fraction:
    '''
    Convert [num, den] into Fraction
    Eg: [-1, 2] -> Fraction(-1, 2)
    '''
    if len(pair) != 2:
        raise ValueError(f"rational pair must have two entries, got {list(pair)!r}")
    num, den = pair
    if isinstance(num, bool) or isinstance(den, bool) or not isinstance(num, int) or not isinstance(den, int):
        raise ValueError(f"rational pair must hold integers, got {list(pair)!r}")
    if den == 0:
        raise ValueError("zero denominator")
    return Fraction(num, den)


def Frac2Pair(value) -> List[int]:
    '''
    Convert a rational into its reduced [num, den] pair
    Eg: Fraction(2, 4) -> [1, 2]
    '''
    f = Frac(value)
    return [f.numerator, f.denominator]


def FracArr2PairArr(values: Iterable) -> List[List[int]]:
    return [Frac2Pair(v) for v in values]


def Frac2QQ(value):
    f = Frac(value)
    return QQ(f.numerator, f.denominator)


def QQ2Frac(value) -> Fraction:
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def CoefStr(coef, name: str) -> str:
    '''
    Render one term of a linear combination, sign included
    Eg: (1, "Y1") -> "Y1", (-1/2, "Y1") -> "-1/2*Y1"
    '''
    if coef == 1:
        return name
    if coef == -1:
        return "-" + name
    if isinstance(coef, float):
        text = repr(coef)
    else:
        text = str(Frac(coef))
    return f"{text}*{name}"


def LinComb2Str(terms: Iterable[Tuple[object, str]]) -> str:
    '''
    Render a linear combination from (coefficient, name) pairs, zero terms skipped
    Eg: [(1, "Y1"), (-2, "Y3")] -> "Y1 - 2*Y3", [] -> "0"
    '''
    out = ""
    for coef, name in terms:
        if coef == 0:
            continue
        term = CoefStr(coef, name)
        if not out:
            out = term
        elif term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out or "0"
