import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymperm.errors import DivisionByZero, MixedRadicand
from prymperm.qfield import (OrderBasis, QuadNum, canonical_d, lam, lattice_basis, qnum_arith,
                             qnum_sign, rational_part_fr, rho)
from prymperm.prototypes import reduced_prototypes

from oracles import decimal_sign

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
discs = st.sampled_from([2, 5, 8, 12, 17, 20, 25, 33, 36, 64, 73, 116])


@st.composite
def triples(draw):
    D = draw(discs)
    return tuple(QuadNum(draw(fractions), draw(fractions), D) for _ in range(3))


def test_lambda_norm():
    L = lam(17, -3)
    assert qnum_arith(L, L.conj(), "mul") == QuadNum(-2, 0, 17)


def test_self_difference_is_zero():
    x = QuadNum(Fraction(3, 7), Fraction(-5, 2), 41)
    assert qnum_arith(x, x, "sub") == 0


def test_rationalised_quotient():
    # (1 - l)/l with l = (-3 + sqrt 17)/2, rationalised by hand: (-1 + sqrt 17)/4
    L = lam(17, -3)
    assert qnum_arith(1 - L, L, "div") == QuadNum(Fraction(-1, 4), Fraction(1, 4), 17)


def test_signs():
    L = lam(17, -3)
    assert qnum_sign(L) == "positive"
    assert qnum_sign(QuadNum(0, 0, 17)) == "zero"
    assert qnum_sign(L.conj()) == "negative"


def test_errors():
    with pytest.raises(MixedRadicand):
        QuadNum(1, 1, 5) + QuadNum(1, 1, 17)
    with pytest.raises(DivisionByZero):
        QuadNum(1, 1, 5) / QuadNum(0, 0, 5)


def test_square_discriminant_stays_symbolic():
    x = QuadNum(0, 1, 64)
    assert x.q == 1
    assert x.is_rational() and x.value() == 8
    assert x == QuadNum(8, 0, 64)
    assert QuadNum(3, -1, 9).sign() == 0


def test_rational_part_examples():
    assert rational_part_fr(rho(17 * 4, 2), OrderBasis.rho_basis(68, d=2)) == (0, 1, 0)
    r = rho(20, 2)
    assert r == QuadNum(-1, Fraction(1, 2), 20)
    p, q, fr = rational_part_fr(Fraction(1, 2) + r / 2, OrderBasis.rho_basis(20, half=True, d=2))
    assert (p, fr) == (Fraction(1, 2), Fraction(1, 2))


def test_half_lambda_is_integral_in_half_basis():
    for D in range(20, 501, 4):
        if D % 16 not in (0, 4, 8, 12):
            continue
        try:
            d = canonical_d(D)
        except Exception:
            continue
        basis = OrderBasis.rho_basis(D, half=True, d=d)
        for e in reduced_prototypes(D):
            assert rational_part_fr(lam(D, e) / 2, basis)[2] == 0, (D, e)


def test_canonical_d():
    assert canonical_d(20) == 2
    assert canonical_d(32) == 0
    assert canonical_d(68) == 2


def test_lattice_basis():
    B = lattice_basis([[2, 0], [0, 3], [1, 1]])
    assert abs(B[0][0] * B[1][1]) == 1
    assert lattice_basis([[Fraction(1, 2), 0], [0, 1], [1, 0]]) == [[Fraction(1, 2), 0], [0, 1]]


@given(triples())
def test_distributive(t):
    x, y, z = t
    assert (x + y) * z == x * z + y * z


@given(triples())
def test_norm_and_trace(t):
    x = t[0]
    n = x * x.conj()
    assert n.is_rational() and n.value() == x.p ** 2 - x.q ** 2 * x.d_param
    tr = x + x.conj()
    assert tr.is_rational() and tr.value() == 2 * x.p


@given(triples())
def test_division_inverts_multiplication(t):
    x, y, _ = t
    if y:
        assert (x * y) / y == x


@given(st.integers(20, 500), fractions, fractions, st.booleans())
def test_basis_reconstruction(D, p, q, half):
    try:
        d = canonical_d(D)
    except Exception:
        return
    basis = OrderBasis.rho_basis(D, half=half, d=d)
    x = QuadNum(p, q, D)
    a, b = basis.coordinates(x)
    assert a + b * basis.generator == x


@settings(max_examples=300)
@given(triples())
def test_sign_matches_decimal(t):
    x = t[0]
    assert x.sign() == decimal_sign(x.p, x.q, x.d_param)


def test_sign_matches_decimal_bulk():
    rng = random.Random(20260)
    for _ in range(10_000):
        D = rng.randint(2, 600)
        p = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 999))
        q = Fraction(rng.randint(-10 ** 4, 10 ** 4), rng.randint(1, 999))
        if rng.random() < 0.1 and D > 1:
            # near-cancelling cases
            p = -q * Fraction(int(D ** 0.5 * 1000), 1000)
        x = QuadNum(p, q, D)
        assert x.sign() == decimal_sign(p, q, D)
