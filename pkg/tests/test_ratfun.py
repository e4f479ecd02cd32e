from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from a2zeta.ratfun import (RatFunQT, abscissa, funeq_check, invert_q, poincare_closed,
                           pole_real_parts, pretty, q, series_in_t, t, zeta_closed_form, u_value)


def test_u_values():
    assert u_value("sl3", 2) == Fraction(17, 2)
    assert u_value("sl3", Fraction(1, 2)) == Fraction(-25, 8)
    assert u_value("su3", 2) == Fraction(-11, 2)


def test_closed_form_series():
    assert series_in_t(zeta_closed_form("sl3", 0), 2, 0) == [1]
    assert series_in_t(zeta_closed_form("sl3", 2), 2, 2) == [65536, 0, 200704]
    c = series_in_t(zeta_closed_form("su3", 2), 2, 1)
    assert c == [65536, 0]
    assert series_in_t(RatFunQT(1 / (1 - q * t ** 2)), 3, 4)[4] == 9


def test_series_requires_unit_constant_term():
    with pytest.raises(ZeroDivisionError):
        series_in_t(RatFunQT(1 / t), 2, 3)


@pytest.mark.parametrize("variant", ["sl3", "su3"])
def test_funeq(variant):
    assert funeq_check(variant)
    P = poincare_closed(variant)
    bumped = P + RatFunQT(t ** 2 / ((1 - q * t ** 2) * (1 - q ** 2 * t ** 3)))
    assert not funeq_check(f=bumped)


def test_funeq_fails_with_t_held_fixed():
    # only the simultaneous substitution (q, t) -> (1/q, 1/t) gives the identity
    P = poincare_closed("sl3")
    fixed_t = RatFunQT(P.to_sympy().subs(q, 1 / q))
    assert not (fixed_t == RatFunQT(q ** 8) * P)


def test_poles():
    for v in ("sl3", "su3"):
        assert pole_real_parts(zeta_closed_form(v, 2)) == [Fraction(1, 2), Fraction(2, 3)]
        assert abscissa(zeta_closed_form(v, 1)) == Fraction(2, 3)
    assert pole_real_parts(RatFunQT(1 / (1 - q * t))) == [1]


def test_pretty():
    s = pretty(RatFunQT(1 / (1 - q * t)))
    assert "q^(1-s)" in s


_small = st.builds(lambda a, b, c: RatFunQT((a + b * q * t) / (1 + c * q * t ** 2)),
                   st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3))


@settings(max_examples=30, deadline=None)
@given(_small, _small, _small)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


@settings(max_examples=20, deadline=None)
@given(_small)
def test_invert_q_involution(a):
    assert invert_q(invert_q(a)) == a


@settings(max_examples=20, deadline=None)
@given(_small, _small)
def test_series_of_product_is_convolution(a, b):
    k = 6
    sa, sb, sab = series_in_t(a, 2, k), series_in_t(b, 2, k), series_in_t(a * b, 2, k)
    for n in range(k + 1):
        assert sab[n] == sum(sa[i] * sb[n - i] for i in range(n + 1))
