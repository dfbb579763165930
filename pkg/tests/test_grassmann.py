import itertools
import random
from fractions import Fraction

import pytest

from COMMON.Description import MIXED
from COMMON.Errors import GeneratorCountError, NotInvertibleError, ParityError
from GRASSMANN.Grassmann import (
    GrassmannNumber,
    Parity,
    SuperPoint,
    body,
    body_point,
    g_add,
    g_mul,
    parity_of,
)
from GRASSMANN.Kernel.sign import mask_to_key, merge_sign, product_table

L = 4


def x(i, L=L):
    return GrassmannNumber.generator(i, L)


def one(L=L):
    return GrassmannNumber.scalar(1, L)


def _random_number(rng, L=L):
    keys = [k for r in range(L + 1) for k in itertools.combinations(range(1, L + 1), r)]
    return GrassmannNumber(L, {k: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for k in rng.sample(keys, 4)})


def _random_homogeneous(rng, parity, L=L):
    keys = [k for r in range(L + 1) for k in itertools.combinations(range(1, L + 1), r) if len(k) % 2 == parity]
    return GrassmannNumber(L, {k: rng.randint(-3, 3) for k in rng.sample(keys, 3)})


# ---- sign kernel ----
def test_merge_sign_counts_inversions():
    assert merge_sign(0b01, 0b10) == 1
    assert merge_sign(0b10, 0b01) == -1
    assert merge_sign(0b11, 0b01) == 0
    # x2^x3 * x1 = x1^x2^x3 after two swaps
    assert merge_sign(0b110, 0b001) == 1
    # x3 * x1^x2 needs two swaps, x2 * x1^x3 needs one
    assert merge_sign(0b100, 0b011) == 1
    assert merge_sign(0b010, 0b101) == -1


def test_product_table_matches_kernel():
    I, J, K, S = product_table(3)
    for i, j, k, s in zip(I, J, K, S):
        assert merge_sign(int(i), int(j)) == s
        assert k == i | j
    assert len(I) == 3 ** 3


def test_cython_kernel_agrees_when_built():
    sign_cy = pytest.importorskip("GRASSMANN.Kernel.sign_cy")
    for a in range(16):
        for b in range(16):
            assert sign_cy.merge_sign_cy(a, b) == merge_sign(a, b)


def test_mask_to_key():
    assert mask_to_key(0b1011) == (1, 2, 4)
    assert mask_to_key(0) == ()


# ---- g_mul ----
def test_generators_square_to_zero():
    assert g_mul(x(1), x(1)).is_zero


def test_generators_anticommute():
    x12 = GrassmannNumber.monomial((1, 2), L)
    assert g_mul(x(1), x(2)) == x12
    assert g_mul(x(2), x(1)) == -x12


def test_nilpotent_cross_terms_cancel():
    assert g_mul(one() + x(1), one() - x(1)) == 1


def test_mismatched_generator_count():
    with pytest.raises(GeneratorCountError):
        g_mul(x(1, 3), x(1, 4))
    with pytest.raises(GeneratorCountError):
        g_add(x(1, 3), x(1, 4))


def test_supercommutativity_exhaustive():
    keys = [k for r in range(L + 1) for k in itertools.combinations(range(1, L + 1), r)]
    for ka in keys:
        for kb in keys:
            a = GrassmannNumber.monomial(ka, L)
            b = GrassmannNumber.monomial(kb, L)
            sign = -1 if (len(ka) % 2 and len(kb) % 2) else 1
            assert g_mul(a, b) == g_mul(b, a).scale(sign)


def test_associativity_random():
    rng = random.Random(7)
    for _ in range(50):
        a, b, c = (_random_number(rng) for _ in range(3))
        assert g_mul(g_mul(a, b), c) == g_mul(a, g_mul(b, c))


def test_products_beyond_l_vanish():
    p = one()
    for i in range(1, L + 1):
        p = g_mul(p, x(i))
    assert not p.is_zero
    assert g_mul(p, x(2)).is_zero


# ---- g_add ----
def test_additive_identity():
    assert g_add(x(1), GrassmannNumber(L)) == x(1)


def test_cancellation_keeps_canonical_form():
    a = GrassmannNumber(L, {(): 2, (1, 2): 1})
    out = g_add(a, GrassmannNumber.scalar(-2, L))
    assert out.terms == {(1, 2): 1}


def test_doubling():
    assert g_add(x(1), x(1)) == x(1).scale(2)


def test_scalars_hash_like_numbers():
    three = GrassmannNumber.scalar(3, 2)
    assert three == 3 and hash(three) == hash(3)
    assert GrassmannNumber(2) == 0 and hash(GrassmannNumber(2)) == hash(0)
    half = GrassmannNumber.scalar(Fraction(1, 2), L)
    assert hash(half) == hash(0.5)
    assert {3: "three"}[three] == "three"
    assert three in {3, 4}
    assert len({x(1), x(1).scale(1), x(2)}) == 2


# ---- body ----
def test_body_reads_constant_term():
    assert body(GrassmannNumber(L, {(): 3, (1, 2): 2})) == 3
    assert body(x(1)) == 0


def test_body_is_a_homomorphism():
    a = one() + x(1)
    b = GrassmannNumber.scalar(2, L) + x(2)
    assert body(g_mul(a, b)) == 2
    rng = random.Random(11)
    for _ in range(30):
        a, b = _random_number(rng), _random_number(rng)
        assert body(g_mul(a, b)) == body(a) * body(b)
        assert body(g_add(a, b)) == body(a) + body(b)


def test_body_point():
    p = SuperPoint((GrassmannNumber(L, {(): 3, (1, 2): 1}), GrassmannNumber.scalar(1, L)), (x(1),))
    assert body_point(p) == [3, 1]
    soul = SuperPoint((GrassmannNumber.monomial((1, 2), L),), (x(3),))
    assert body_point(soul) == [0]
    assert body_point(SuperPoint.from_reals([5], num_generators=L)) == [5]


def test_superpoint_rejects_wrong_slot_parity():
    with pytest.raises(ParityError):
        SuperPoint((x(1),), ())
    with pytest.raises(ParityError):
        SuperPoint((), (one(),))


# ---- parity ----
def test_parity_of():
    assert parity_of(GrassmannNumber.monomial((1, 2), L)) == Parity.EVEN
    assert parity_of(x(1) + GrassmannNumber.monomial((1, 2, 3), L)) == Parity.ODD
    assert parity_of(one() + x(1)) == MIXED
    assert parity_of(GrassmannNumber(L)) == Parity.EVEN


def test_parity_addition_is_mod_two():
    assert Parity.EVEN.plus(Parity.EVEN) == Parity.EVEN
    assert Parity.EVEN.plus(Parity.ODD) == Parity.ODD
    assert Parity.ODD.plus(Parity.ODD) == Parity.EVEN


def test_homogeneous_products_have_added_parity():
    rng = random.Random(3)
    for pa, pb in itertools.product((0, 1), repeat=2):
        a, b = _random_homogeneous(rng, pa), _random_homogeneous(rng, pb)
        prod = g_mul(a, b)
        if not prod.is_zero:
            assert parity_of(prod) == Parity(pa).plus(Parity(pb))


# ---- extras ----
def test_text_form():
    assert str(GrassmannNumber(L, {(): 3, (1, 2): 2})) == "3 + 2*x1^x2"
    assert str(GrassmannNumber(L, {(1,): -1, (1, 2, 3): Fraction(1, 2)})) == "-x1 + 1/2*x1^x2^x3"
    assert str(GrassmannNumber(L)) == "0"


def test_inverse():
    a = GrassmannNumber(L, {(): 2, (1, 2): 1, (3,): 1})
    assert g_mul(a, a.inverse()) == 1
    with pytest.raises(NotInvertibleError):
        x(1).inverse()
