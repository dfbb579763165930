from fractions import Fraction

import pytest

from COMMON.Cast import CoefStr, Frac, Frac2Pair, Frac2QQ, LinComb2Str, Pair2Frac, QQ2Frac
from COMMON.Config import Settings
from COMMON.Description import DEFAULT_GENERATORS, MAX_GENERATORS, STEPS_PER_SEGMENT


# ---- casts ----
def test_frac():
    assert Frac(3) == Fraction(3)
    assert Frac("1/2") == Fraction(1, 2)
    assert Frac([2, -4]) == Fraction(-1, 2)
    assert Frac(0.5) == Fraction(1, 2)
    with pytest.raises(TypeError):
        Frac(True)
    with pytest.raises(TypeError):
        Frac(object())


def test_pairs():
    assert Frac2Pair(Fraction(2, 4)) == [1, 2]
    assert Frac2Pair(-3) == [-3, 1]
    for bad in ([1], [1, 0], [1.0, 2], [True, 1]):
        with pytest.raises(ValueError):
            Pair2Frac(bad)


def test_qq_round_trip():
    assert QQ2Frac(Frac2QQ("-7/3")) == Fraction(-7, 3)


def test_linear_combination_text():
    assert LinComb2Str([(1, "Y1"), (-2, "Y3")]) == "Y1 - 2*Y3"
    assert LinComb2Str([(0, "Y1"), (Fraction(-1, 2), "Xi1")]) == "-1/2*Xi1"
    assert LinComb2Str([]) == "0"
    assert CoefStr(-1, "Y2") == "-Y2"
    assert CoefStr(0.25, "x1") == "0.25*x1"


# ---- settings ----
def test_settings_defaults():
    s = Settings.from_env({})
    assert s.generators == DEFAULT_GENERATORS
    assert s.steps_per_segment == STEPS_PER_SEGMENT
    assert s.log_level == "WARNING" and s.seed == 0


def test_settings_from_env():
    s = Settings.from_env({
        "SUPERCTRL_GENERATORS": "6",
        "SUPERCTRL_LOG_LEVEL": "debug",
        "SUPERCTRL_STEPS_PER_SEGMENT": "0x80",
        "SUPERCTRL_SEED": "17",
    })
    assert (s.generators, s.log_level, s.steps_per_segment, s.seed) == (6, "DEBUG", 128, 17)


def test_settings_fall_back_on_bad_values():
    s = Settings.from_env({
        "SUPERCTRL_GENERATORS": "99",
        "SUPERCTRL_LOG_LEVEL": "loud",
        "SUPERCTRL_STEPS_PER_SEGMENT": "many",
        "SUPERCTRL_SEED": "-1",
    })
    assert s == Settings()


def test_generator_count_is_capped():
    assert MAX_GENERATORS == 10
    assert Settings.from_env({"SUPERCTRL_GENERATORS": "10"}).generators == 10
    assert Settings.from_env({"SUPERCTRL_GENERATORS": "11"}).generators == DEFAULT_GENERATORS
