import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qqplane.cyclo import (
    CycNum,
    IntPoly,
    cyclotomic_poly,
    embed_root,
    embed_turn,
    format_zeta,
    gauss_binomial,
    inverse,
    mult_order,
    parse_zeta,
    q_factorial,
    q_integer,
    turn_of,
)

ORDERS = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 27]


def to_complex(a: CycNum) -> complex:
    """Numerical oracle: evaluate the coefficient vector at exp(2 pi i / N)."""
    z = cmath.exp(2j * cmath.pi / a.order)
    return sum(float(c) * z**k for k, c in enumerate(a.coeffs))


def elements(order):
    phi = len(cyclotomic_poly(order)) - 1
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=phi, max_size=phi).map(lambda c: CycNum.from_coeffs(order, c))


field_pairs = st.sampled_from(ORDERS).flatmap(lambda n: st.tuples(elements(n), elements(n)))


def test_cyclotomic_polynomials_known_values():
    assert cyclotomic_poly(1) == IntPoly([-1, 1])
    assert cyclotomic_poly(4) == IntPoly([1, 0, 1])
    assert cyclotomic_poly(12) == IntPoly([1, 0, -1, 0, 1])
    assert cyclotomic_poly(9) == IntPoly([1, 0, 0, 1, 0, 0, 1])


@pytest.mark.parametrize("n", range(1, 31))
def test_product_over_divisors_is_x_n_minus_one(n):
    prod = IntPoly([1])
    for d in range(1, n + 1):
        if n % d == 0:
            prod = prod * cyclotomic_poly(d)
    assert prod == IntPoly([-1] + [0] * (n - 1) + [1])


def test_cyclotomic_rejects_bad_order():
    with pytest.raises(ValueError):
        cyclotomic_poly(0)


@settings(max_examples=150, deadline=None)
@given(field_pairs)
def test_arithmetic_matches_numeric_oracle(pair):
    a, b = pair
    assert abs(to_complex(a + b) - (to_complex(a) + to_complex(b))) < 1e-9
    assert abs(to_complex(a - b) - (to_complex(a) - to_complex(b))) < 1e-9
    assert abs(to_complex(a * b) - to_complex(a) * to_complex(b)) < 1e-7


@settings(max_examples=100, deadline=None)
@given(field_pairs)
def test_inverse_and_division(pair):
    a, b = pair
    if not a.is_zero():
        assert a * inverse(a) == CycNum.one(a.order)
        assert (b / a) * a == b


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(CycNum.zero(5))


def test_canonical_form_makes_equality_structural():
    # 1 + zeta_3 + zeta_3^2 = 0
    assert CycNum.from_coeffs(3, [1, 1, 1]).is_zero()
    # zeta_4^2 = -1 and zeta_8^2 = zeta_4 inside Q(zeta_8)
    assert CycNum.zeta(4, 2) == CycNum.const(4, -1)
    assert embed_root(8, 2, 8) == embed_root(4, 1, 8)
    assert hash(CycNum.zeta(6, 3)) == hash(CycNum.const(6, -1))


def test_mixing_fields_is_rejected():
    with pytest.raises(ValueError, match="ambient order mismatch"):
        CycNum.one(4) + CycNum.one(8)


def test_embed_requires_divisibility():
    with pytest.raises(ValueError):
        embed_root(3, 1, 8)


@pytest.mark.parametrize("n", ORDERS)
def test_serialize_roundtrip(n):
    a = CycNum.from_coeffs(n, [Fraction(k, 3) - 1 for k in range(n + 2)])
    assert CycNum.parse(a.serialize()) == a


def test_parse_zeta_products():
    assert parse_zeta("zeta(4)^1") == Fraction(1, 4)
    assert parse_zeta("zeta(2)^1*zeta(4)^1") == Fraction(3, 4)
    assert parse_zeta("zeta(9)^-2") == Fraction(7, 9)
    assert format_zeta(Fraction(5, 4)) == "zeta(4)^1"
    with pytest.raises(ValueError):
        parse_zeta("exp(2)")


@pytest.mark.parametrize("n", ORDERS)
def test_mult_order_agrees_with_brute_force(n):
    one = CycNum.one(n)
    roots = {CycNum.zeta(n, j) for j in range(n)} | {-CycNum.zeta(n, j) for j in range(n)}
    for r in roots:
        k, acc = 1, r
        while acc != one:
            acc = acc * r
            k += 1
        assert mult_order(r) == k
        assert abs(to_complex(r) - cmath.exp(2j * cmath.pi * float(turn_of(r)))) < 1e-9


def test_mult_order_examples():
    # -zeta_4 has order 4; zeta_2 * zeta_4 = -zeta_4
    assert mult_order(embed_root(2, 1, 4) * embed_root(4, 1, 4)) == 4
    # in Q(zeta_3) the element -1 is a root of unity of order 2
    assert mult_order(CycNum.const(3, -1)) == 2
    with pytest.raises(ValueError):
        mult_order(CycNum.const(5, 2))
    with pytest.raises(ValueError):
        mult_order(CycNum.zero(5))


def test_q_integers_and_factorials():
    h = CycNum.zeta(4, 1)
    assert q_integer(0, h).is_zero()
    assert q_integer(4, h).is_zero()
    assert q_integer(2, h) == 1 + h
    assert q_factorial(3, h) == (1 + h) * (1 + h + h * h)
    assert q_factorial(4, h).is_zero()
    assert q_factorial(3, CycNum.one(4)) == 6


@pytest.mark.parametrize("order", [3, 4, 5, 8, 9])
def test_q_factorial_vanishes_exactly_from_the_order(order):
    for j in range(1, order):
        h = CycNum.zeta(order, j)
        N = mult_order(h)
        for l in range(1, N + 2):
            assert q_factorial(l, h).is_zero() == (l >= N)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.integers(0, 9), st.sampled_from([3, 4, 5, 8, 12]), st.integers(0, 11))
def test_q_pascal_both_forms(n, k, order, j):
    if k > n:
        return
    h = CycNum.zeta(order, j)
    # [n, k] = h^(n-k) [n-1, k-1] + [n-1, k]
    if 0 < k < n:
        alt = h ** (n - k) * gauss_binomial(n - 1, k - 1, h) + gauss_binomial(n - 1, k, h)
        assert gauss_binomial(n, k, h) == alt
    # the factorial formula wherever it is defined
    den = q_factorial(k, h) * q_factorial(n - k, h)
    if not den.is_zero():
        assert gauss_binomial(n, k, h) == q_factorial(n, h) / den


def test_gauss_binomial_at_one_is_binomial():
    from math import comb

    one = CycNum.one(6)
    for n in range(8):
        for k in range(n + 1):
            assert gauss_binomial(n, k, one) == comb(n, k)
    with pytest.raises(ValueError):
        gauss_binomial(2, 3, one)


def test_embed_turn_and_sum_of_zetas():
    assert embed_turn(Fraction(3, 4), 8) == CycNum.zeta(8, 6)
    assert CycNum.sum_of_zetas(6, [0, 3]).is_zero()
    assert CycNum.sum_of_zetas(5, range(5)).is_zero()
