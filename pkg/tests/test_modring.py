import itertools

import pytest
from hypothesis import given, strategies as st

from a2zeta.modring import AtLeast, FqField, ResidueRing, fq_norm_trace, least_nonresidue, val


def test_valuation_examples():
    Z8 = ResidueRing(2, 3)
    assert val(Z8(4)) == 2
    assert val(Z8(0)) == AtLeast(3)
    assert repr(val(Z8(0))) == ">=3"
    assert val(ResidueRing(3, 2)(3 - 3)) == AtLeast(2)
    assert val(ResidueRing(3, 2)(3)) == 1
    assert val(ResidueRing(3, 2)(4)) == 0


def test_rejects_composite_modulus():
    with pytest.raises(ValueError):
        ResidueRing(6, 2)
    with pytest.raises(ValueError):
        FqField(9, 1)


def _v(x, n):
    return n if isinstance(x, AtLeast) else x


@given(st.sampled_from([(2, 3), (3, 2), (5, 2), (7, 1)]), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_valuation_laws(pn, a, b):
    p, n = pn
    R = ResidueRing(p, n)
    x, y = R(a), R(b)
    assert _v(val(x * y), n) == min(_v(val(x), n) + _v(val(y), n), n)
    assert _v(val(x + y), n) >= min(_v(val(x), n), _v(val(y), n))


def test_units_and_inverse():
    R = ResidueRing(5, 2)
    for a in range(25):
        x = R(a)
        if x.is_unit():
            assert (x * x.inverse()).value == 1
        else:
            with pytest.raises(ZeroDivisionError):
                x.inverse()


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2)])
def test_field_axioms_exhaustive(p, f):
    F = FqField(p, f)
    els = list(F.elements())
    for x, y, z in itertools.product(els, repeat=3):
        assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
    for x in els[1:]:
        assert F.mul(x, F.inv(x)) == 1


@pytest.mark.parametrize("p,f", [(2, 2), (5, 2), (7, 2), (7, 1), (3, 2)])
def test_frobenius_is_automorphism(p, f):
    F = FqField(p, f)
    for x in F.elements():
        for y in F.elements():
            assert F.frobenius(F.add(x, y)) == F.add(F.frobenius(x), F.frobenius(y))
            assert F.frobenius(F.mul(x, y)) == F.mul(F.frobenius(x), F.frobenius(y))
    # the conjugation has order 2 and fixes exactly the prime field
    fixed = [x for x in F.elements() if F.conj(x) == x]
    assert len(fixed) == p
    assert all(F.conj(F.conj(x)) == x for x in F.elements())


def test_norm_trace_examples():
    F4 = FqField(2, 2)
    one = F4(1)
    assert tuple(v.code for v in fq_norm_trace(one)) == (1, 0)
    w = F4(0, 1)
    assert w * w == w + 1  # char 2: omega^2 = omega + 1
    assert tuple(v.code for v in fq_norm_trace(w)) == (1, 1)
    F25 = FqField(5, 2)
    assert sum(1 for x in F25.elements() if F25.norm_trace(x)[0] == 1) == 6
    with pytest.raises(ValueError):
        FqField(5, 1).norm_trace(1)


def test_norm_and_trace_land_in_prime_field():
    F = FqField(7, 2)
    for x in F.elements():
        n, t = F.norm_trace(x)
        assert n < 7 and t < 7


def test_modulus_choice():
    assert FqField(2, 2).modulus == (1, 1, 1)
    F = FqField(7, 2)
    assert F.delta == least_nonresidue(7) == 3
    assert F.modulus == ((-3) % 7, 0, 1)
    # X squares to delta
    assert F.mul(F.join(0, 1), F.join(0, 1)) == F.join(3)
