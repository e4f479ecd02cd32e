import numpy as np
import pytest
import sympy

from a2zeta.lattice import (LieLattice, commutator_matrix, evaluate, make_lattice, make_sl3,
                            make_su3, normalized_killing, permissible, KILLING_SL3)
from a2zeta.modring import FqField

SL3 = make_sl3()


def _vec(L, name, c=1):
    v = np.zeros(L.d, dtype=np.int64)
    v[L.index(name)] = c
    return v


def test_sl3_examples():
    L = SL3
    assert L.lam[L.index("e12"), L.index("f21"), L.index("h12")] == 1
    br = L.bracket(_vec(L, "h12"), _vec(L, "e12"))
    assert list(br) == list(2 * _vec(L, "e12"))
    for i in range(8):
        assert not L.bracket(np.eye(8, dtype=np.int64)[i], np.eye(8, dtype=np.int64)[i]).any()


def _mat(L, v):
    """Matrix over Z[theta] as (A, B) from coordinates."""
    A = sum(int(c) * L.basis[i][0] for i, c in enumerate(v))
    B = sum(int(c) * L.basis[i][1] for i, c in enumerate(v))
    return A, B


def test_sl3_brackets_are_matrix_commutators():
    rng = np.random.default_rng(0)
    for _ in range(200):
        x, y = rng.integers(-3, 4, size=(2, 8))
        X, _ = _mat(SL3, x)
        Y, _ = _mat(SL3, y)
        Z, _ = _mat(SL3, SL3.bracket(x, y))
        assert np.array_equal(X @ Y - Y @ X, Z)


@pytest.mark.parametrize("p", [2, 5, 7, 11])
def test_su3_jacobi_and_perfect(p):
    L = make_su3(p)
    assert L.jacobi_holds()
    assert L.is_perfect()


def test_sl3_jacobi_and_perfect():
    assert SL3.jacobi_holds() and SL3.is_perfect()
    assert not LieLattice("ab", np.zeros((3, 3, 3), dtype=np.int64)).is_perfect()


def test_su3_rejects_char3():
    with pytest.raises(ValueError):
        make_su3(3)


def _reduce_su3_basis(L, F):
    """Basis matrices over F_{p^2}; theta maps to the code of X."""
    out = []
    for A, B in L.basis:
        out.append(np.vectorize(lambda a, b: F.join(a, b))(A % F.p, B % F.p))
    return out


def _fmat_mul(F, X, Y):
    Z = np.zeros((3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            acc = 0
            for k in range(3):
                acc = F.add(acc, F.mul(int(X[i, k]), int(Y[k, j])))
            Z[i, j] = acc
    return Z


@pytest.mark.parametrize("p", [2, 5])
def test_su3_reduction_matches_matrix_brackets(p):
    L = make_su3(p)
    F = FqField(p, 2)
    assert (F.c0 % p, F.c1 % p) == (L.ring[0] % p, L.ring[1] % p)
    B = _reduce_su3_basis(L, F)
    for i in range(8):
        for j in range(8):
            XY = _fmat_mul(F, B[i], B[j])
            YX = _fmat_mul(F, B[j], B[i])
            comm = F.add_table[XY, F.neg_table[YX]]
            expect = np.zeros((3, 3), dtype=np.int64)
            for h in range(8):
                c = int(L.lam[i, j, h]) % p
                if c:
                    expect = F.add_table[expect, F.mul_table[c, B[h]]]
            assert np.array_equal(comm, expect)


@pytest.mark.parametrize("p", [5, 7])
def test_su3_basis_is_antihermitian_traceless(p):
    L = make_su3(p)
    F = FqField(p, 2)
    for M in _reduce_su3_basis(L, F):
        assert np.array_equal(F.conj_table[M].T, F.neg_table[M])
        assert F.add(F.add(int(M[0, 0]), int(M[1, 1])), int(M[2, 2])) == 0


def test_commutator_matrix():
    R = commutator_matrix(SL3)
    M = evaluate(R, _vec(SL3, "h12"))
    assert M[SL3.index("e12"), SL3.index("f21")] == 1
    assert not evaluate(R, np.zeros(8, dtype=np.int64)).any()
    rng = np.random.default_rng(1)
    for L in (SL3, make_su3(2)):
        R = commutator_matrix(L)
        for y in rng.integers(0, 8, size=(1000, 8)):
            M = R.evaluate(y, 8)
            assert np.array_equal(M, (-M.T) % 8)
    with pytest.raises(ValueError):
        R.evaluate(np.zeros(5, dtype=np.int64))


def test_commutator_pairing_reproduces_bracket():
    rng = np.random.default_rng(2)
    for L in (SL3, make_su3(5)):
        R = commutator_matrix(L)
        for _ in range(1000):
            y, z, w = rng.integers(0, 5, size=(3, 8))
            assert (z @ R.evaluate(y) @ w) % 5 == (L.bracket(z, w) @ y) % 5


@pytest.mark.parametrize("alg,p", [("sl3", 2), ("su3", 2), ("sl3", 5), ("su3", 5)])
def test_max_rank_is_six(alg, p):
    from a2zeta.eldiv import rank_mod_p
    L = make_lattice(alg, p)
    R = commutator_matrix(L)
    rng = np.random.default_rng(3)
    if p == 2:
        ys = np.indices((2,) * 8).reshape(8, -1).T[1:]
    else:
        ys = rng.integers(0, p, size=(3000, 8))
    assert max(rank_mod_p(R.evaluate(y, p), p) for y in ys) == 6


def test_killing_form():
    L = SL3
    assert normalized_killing(L, _vec(L, "h12"), _vec(L, "h12")) == 2
    assert normalized_killing(L, _vec(L, "e12"), _vec(L, "f21")) == 1
    assert abs(sympy.Matrix(KILLING_SL3.tolist()).det()) == 3
    rng = np.random.default_rng(4)
    for _ in range(200):
        x, y, z = rng.integers(-4, 5, size=(3, 8))
        assert normalized_killing(L, L.bracket(x, y), z) == normalized_killing(L, x, L.bracket(y, z))
    with pytest.raises(ValueError):
        normalized_killing(make_su3(5), _vec(L, "h12"), _vec(L, "h12"))


def test_permissible():
    assert permissible(1, 5, 1)
    assert permissible(1, 2, 2) and not permissible(1, 2, 1)
    assert not permissible(3, 2, 5) and permissible(3, 2, 6)


def test_json_roundtrip():
    for L in (SL3, make_su3(7)):
        back = LieLattice.from_json(L.to_json())
        assert np.array_equal(back.lam, L.lam) and back.names == L.names
