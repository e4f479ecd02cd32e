from fractions import Fraction

import numpy as np
import pytest
import sympy

from a2zeta.lattice import make_lattice, make_sl3
from a2zeta.padicint import (Z_tail_bound, Z_truncated, closed_poincare_via_integral, closed_Z,
                             closed_Z0_Z1, dual_path_exponents, geometric_closed,
                             geometric_partial, integrand_exponent, link_check, link_report,
                             literal_integrand_exponent, primitive_vectors, xi_cone, xi_cone_expr)
from a2zeta.poincare import ProfileCensus, enumerate_counts
from a2zeta.ratfun import RatFunQT, poincare_closed, pole_real_parts, q, t

SL3 = make_sl3()


def _vec(**kw):
    v = np.zeros(8, dtype=np.int64)
    for k, c in kw.items():
        v[SL3.index(k)] = c
    return v


def test_integrand_examples():
    reg = _vec(e12=1, e23=1)
    assert integrand_exponent(SL3, 1, reg, 5).c == 2
    irr = _vec(e13=1)  # rank-4 nilpotent
    assert integrand_exponent(SL3, 1, irr, 5).c == 4
    assert literal_integrand_exponent(SL3, 1, irr, 5).c == 4
    with pytest.raises(ValueError):
        integrand_exponent(SL3, 1, np.zeros(8, dtype=np.int64), 5)


def test_literal_matches_profile_random_p2():
    rng = np.random.default_rng(0)
    done = 0
    for n in (1, 2, 3):
        Y = rng.integers(0, 2 ** n, size=(4000, 8))
        Y = Y[(Y % 2).any(axis=1)]
        prof, lit = dual_path_exponents(SL3, 2, n, Y)
        assert np.array_equal(prof, lit)
        done += len(Y)
    assert done >= 10 ** 4


def test_bulk_literal_matches_slow_literal():
    rng = np.random.default_rng(1)
    Y = rng.integers(0, 4, size=(30, 8))
    Y = Y[(Y % 2).any(axis=1)]
    _, lit = dual_path_exponents(SL3, 2, 2, Y)
    for y, c in zip(Y, lit):
        assert literal_integrand_exponent(SL3, 2, y, 2).c == c


def test_all_minor_family_agrees_on_samples():
    rng = np.random.default_rng(2)
    for _ in range(3):
        y = rng.integers(0, 5, size=8)
        y[0] = 1
        a = literal_integrand_exponent(SL3, 1, y, 5, jmax=2)
        b = literal_integrand_exponent(SL3, 1, y, 5, jmax=2, all_minors=True)
        assert a == b


def test_closed_Z_examples():
    z0, z1 = closed_Z0_Z1(5, 0, 0)
    assert z0 == Fraction(1, 5 ** 9)
    assert z1 == z0
    with pytest.raises(ValueError):
        closed_Z0_Z1(5, 0, -1)


def test_geometric_identity():
    h = Fraction(1, 2)
    assert geometric_closed(h, h, h) == Fraction(3, 7)
    assert abs(geometric_partial(h, h, h, 60) - Fraction(3, 7)) < Fraction(1, 10 ** 12)
    x1, x2, x3 = sympy.symbols("x1 x2 x3")
    # the cone sum over N^2 with a single min form reproduces the identity
    e = xi_cone_expr(2, [x1, x2], [(x3, [((1, 0), 0), ((0, 1), 0)])])
    assert sympy.simplify(e - geometric_closed(x1, x2, x3)) == 0


def test_cone_rank_one_and_shift():
    X, G = sympy.symbols("X G")
    e = xi_cone_expr(1, [X], [(G, [((0,), 0)])])
    assert sympy.simplify(e - X / (1 - X)) == 0
    base = xi_cone(2, [(1, 2), (0, 3)], [((0, 1), [((1, 0), 0), ((0, 1), 0)])])
    shifted = xi_cone(2, [(1, 2), (0, 3)], [((0, 1), [((1, 0), 1), ((0, 1), 1)])])
    assert pole_real_parts(base) == pole_real_parts(shifted)
    assert shifted == RatFunQT(t) * base
    with pytest.raises(ValueError):
        xi_cone_expr(3, [X, X, X], [])


def test_delta_shift_brute_force():
    h = Fraction(1, 3)
    # asymmetric shift: min(l + 1, n)
    e = xi_cone_expr(2, [sympy.Rational(1, 3)] * 2,
                     [(sympy.Rational(1, 2), [((1, 0), 1), ((0, 1), 0)])])
    brute = sum(h ** l * h ** n * Fraction(1, 2) ** min(l + 1, n)
                for l in range(1, 80) for n in range(1, 80))
    assert abs(Fraction(str(e)) - brute) < Fraction(1, 10 ** 20)


@pytest.mark.parametrize("variant", ["sl3", "su3"])
def test_integral_matches_closed_form(variant):
    assert closed_poincare_via_integral(variant) == poincare_closed(variant)


def test_link_and_tamper():
    c = enumerate_counts(SL3, 2, 2)
    for s in (1, 3, 4):
        assert link_check(c, s)
    assert link_report(c, 4, rho=4).equal  # the fourth family is redundant here
    # too few minor families breaks the identity
    assert not link_check(c, 4, rho=2)
    # the identity holds profile by profile, so any census satisfies it
    lv = {n: dict(v) for n, v in c.levels.items()}
    lv[1][(0, 0, 1, 1)] += 5
    assert link_check(ProfileCensus(c.lattice, c.p, c.d, lv), 3)


@pytest.mark.parametrize("variant", ["sl3", "su3"])
def test_truncated_integral_brackets_closed_form(variant):
    c = enumerate_counts(make_lattice(variant, 2), 2, 2)
    r, tt = Fraction(-1, 2), Fraction(3)
    z1, z2 = Z_truncated(c, r, tt, 1, jmax=3), Z_truncated(c, r, tt, 2, jmax=3)
    assert 0 <= z1 <= z2
    full = closed_Z(variant, 2, r, tt)
    assert z2 <= full <= z2 + Z_tail_bound(c, r, tt, 2)


def test_zero_census_gives_zero():
    c = ProfileCensus("sl3", 2, 8, {1: {}})
    assert Z_truncated(c, -1, 1) == 0


def test_dual_path_exhaustive_p2_n1():
    Y = primitive_vectors(2, 1, 8)
    prof, lit = dual_path_exponents(SL3, 2, 1, Y)
    assert len(Y) == 255 and np.array_equal(prof, lit)
