"""numba kernels over 3x3 matrices with entries in a finite field.

Field elements are integer codes; arithmetic goes through dense add/mul
tables.  Type indices: 0 T0, 1 T1, 2 T2, 3 T3, 4 T4a, 5 T4b, 6 T4c, 7 T5.
Charpoly classes (from the lookup table): 0 nilpotent, 1 repeated root,
otherwise the final type index.
"""

import numpy as np
from numba import njit

NILPOTENT = -1
REPEATED = -2


@njit(cache=True)
def mat_mul(A, B, C, add, mul):
    for i in range(3):
        for j in range(3):
            s = 0
            for k in range(3):
                s = add[s, mul[A[i, k], B[k, j]]]
            C[i, j] = s


@njit(cache=True)
def det3(A, add, mul, neg):
    t1 = add[mul[A[1, 1], A[2, 2]], neg[mul[A[1, 2], A[2, 1]]]]
    t2 = add[mul[A[1, 0], A[2, 2]], neg[mul[A[1, 2], A[2, 0]]]]
    t3 = add[mul[A[1, 0], A[2, 1]], neg[mul[A[1, 1], A[2, 0]]]]
    return add[add[mul[A[0, 0], t1], neg[mul[A[0, 1], t2]]], mul[A[0, 2], t3]]


@njit(cache=True)
def minors2(A, add, mul, neg):
    s = 0
    for i in range(3):
        for j in range(i + 1, 3):
            s = add[s, add[mul[A[i, i], A[j, j]], neg[mul[A[i, j], A[j, i]]]]]
    return s


@njit(cache=True)
def _is_zero(A):
    for i in range(3):
        for j in range(3):
            if A[i, j] != 0:
                return False
    return True


@njit(cache=True)
def classify_one(x, ctype, lam, mu, add, mul, neg, W1, W2, W3):
    c1 = minors2(x, add, mul, neg)
    c0 = det3(x, add, mul, neg)
    cls = ctype[c1, c0]
    if cls >= 0:
        return cls, c1, c0
    if cls == NILPOTENT:
        if _is_zero(x):
            return 0, c1, c0
        mat_mul(x, x, W1, add, mul)
        if _is_zero(W1):
            return 2, c1, c0
        return 1, c1, c0
    # repeated eigenvalue l with simple eigenvalue m: is (x - l)(x - m) zero?
    l = lam[c1, c0]
    m = mu[c1, c0]
    for i in range(3):
        for j in range(3):
            W1[i, j] = x[i, j]
            W2[i, j] = x[i, j]
        W1[i, i] = add[x[i, i], neg[l]]
        W2[i, i] = add[x[i, i], neg[m]]
    mat_mul(W1, W2, W3, add, mul)
    if _is_zero(W3):
        return 3, c1, c0
    return 7, c1, c0


@njit(cache=True)
def census_kernel(basis, ncoef, add, mul, neg, ctype, lam, mu):
    """Classify every sum_i c_i basis_i with c_i in codes 0..ncoef-1."""
    nb = basis.shape[0]
    Q = add.shape[0]
    counts = np.zeros(8, dtype=np.int64)
    seen = np.zeros((8, Q * Q), dtype=np.bool_)
    first = np.full(8, -1, dtype=np.int64)
    coef = np.zeros(nb, dtype=np.int64)
    x = np.zeros((3, 3), dtype=np.int64)
    W1 = np.zeros((3, 3), dtype=np.int64)
    W2 = np.zeros((3, 3), dtype=np.int64)
    W3 = np.zeros((3, 3), dtype=np.int64)
    total = 1
    for _ in range(nb):
        total *= ncoef
    for idx in range(total):
        rem = idx
        for t in range(nb):
            coef[t] = rem % ncoef
            rem //= ncoef
        for i in range(3):
            for j in range(3):
                s = 0
                for t in range(nb):
                    if coef[t] != 0:
                        s = add[s, mul[coef[t], basis[t, i, j]]]
                x[i, j] = s
        ty, c1, c0 = classify_one(x, ctype, lam, mu, add, mul, neg, W1, W2, W3)
        counts[ty] += 1
        seen[ty, c1 * Q + c0] = True
        if first[ty] < 0:
            first[ty] = idx
    orbits = np.zeros(8, dtype=np.int64)
    for ty in range(8):
        orbits[ty] = seen[ty].sum()
    return counts, orbits, first


@njit(cache=True)
def _commutes(g, x, add, mul):
    for i in range(3):
        for j in range(3):
            a = 0
            b = 0
            for k in range(3):
                a = add[a, mul[g[i, k], x[k, j]]]
                b = add[b, mul[x[i, k], g[k, j]]]
            if a != b:
                return False
    return True


@njit(cache=True)
def gl3_scan(q, reps, add, mul, neg):
    """Scan GL_3(F_q) (prime field codes).  Returns |GL|, |SL|, C_GL(rep), C_SL(rep)."""
    nr = reps.shape[0]
    cgl = np.zeros(nr, dtype=np.int64)
    csl = np.zeros(nr, dtype=np.int64)
    g = np.zeros((3, 3), dtype=np.int64)
    ngl = 0
    nsl = 0
    total = q ** 9
    for idx in range(total):
        rem = idx
        for t in range(9):
            g[t // 3, t % 3] = rem % q
            rem //= q
        d = det3(g, add, mul, neg)
        if d == 0:
            continue
        ngl += 1
        if d == 1:
            nsl += 1
        for r in range(nr):
            if _commutes(g, reps[r], add, mul):
                cgl[r] += 1
                if d == 1:
                    csl[r] += 1
    return ngl, nsl, cgl, csl


@njit(cache=True)
def _herm(u, v, add, mul, conj):
    s = 0
    for k in range(3):
        s = add[s, mul[u[k], conj[v[k]]]]
    return s


@njit(cache=True)
def gu3_scan(Q, reps, add, mul, neg, inv, conj):
    """Scan GU_3 for the Hermitian form I over F_Q, Q = q^2.

    Rows are built as an orthonormal frame: u1, then u2 in the orthogonal
    complement of u1, then u3 = s * conj(u1 x u2) for every admissible s.
    Returns |GU|, |SU|, C_GU(rep), C_SU(rep).
    """
    nr = reps.shape[0]
    cgu = np.zeros(nr, dtype=np.int64)
    csu = np.zeros(nr, dtype=np.int64)
    g = np.zeros((3, 3), dtype=np.int64)
    u1 = np.zeros(3, dtype=np.int64)
    u2 = np.zeros(3, dtype=np.int64)
    w = np.zeros(3, dtype=np.int64)
    ngu = 0
    nsu = 0
    for i1 in range(Q ** 3):
        rem = i1
        for k in range(3):
            u1[k] = rem % Q
            rem //= Q
        if _herm(u1, u1, add, mul, conj) != 1:
            continue
        k0 = 0
        while u1[k0] == 0:
            k0 += 1
        ka = (k0 + 1) % 3
        kb = (k0 + 2) % 3
        f = neg[inv[conj[u1[k0]]]]
        for i2 in range(Q * Q):
            u2[ka] = i2 % Q
            u2[kb] = i2 // Q
            s = add[mul[u2[ka], conj[u1[ka]]], mul[u2[kb], conj[u1[kb]]]]
            u2[k0] = mul[s, f]
            if _herm(u2, u2, add, mul, conj) != 1:
                continue
            w[0] = conj[add[mul[u1[1], u2[2]], neg[mul[u1[2], u2[1]]]]]
            w[1] = conj[add[mul[u1[2], u2[0]], neg[mul[u1[0], u2[2]]]]]
            w[2] = conj[add[mul[u1[0], u2[1]], neg[mul[u1[1], u2[0]]]]]
            for sc in range(1, Q):
                for k in range(3):
                    g[0, k] = u1[k]
                    g[1, k] = u2[k]
                    g[2, k] = mul[sc, w[k]]
                if _herm(g[2], g[2], add, mul, conj) != 1:
                    continue
                d = det3(g, add, mul, neg)
                ngu += 1
                if d == 1:
                    nsu += 1
                for r in range(nr):
                    if _commutes(g, reps[r], add, mul):
                        cgu[r] += 1
                        if d == 1:
                            csu[r] += 1
    return ngu, nsu, cgu, csu


@njit(cache=True)
def hermitian_gamma(q, x, add, mul, neg, conj):
    """Count nonsingular Hermitian G (entries over F_{q^2}) with x^o G + G x = 0."""
    Q = add.shape[0]
    xo = np.zeros((3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            xo[i, j] = conj[x[j, i]]
    G = np.zeros((3, 3), dtype=np.int64)
    A = np.zeros((3, 3), dtype=np.int64)
    B = np.zeros((3, 3), dtype=np.int64)
    count = 0
    for di in range(q ** 3):
        G[0, 0] = di % q
        G[1, 1] = (di // q) % q
        G[2, 2] = di // (q * q)
        for oi in range(Q ** 3):
            a = oi % Q
            b = (oi // Q) % Q
            c = oi // (Q * Q)
            G[0, 1] = a
            G[1, 0] = conj[a]
            G[0, 2] = b
            G[2, 0] = conj[b]
            G[1, 2] = c
            G[2, 1] = conj[c]
            mat_mul(xo, G, A, add, mul)
            mat_mul(G, x, B, add, mul)
            ok = True
            for i in range(3):
                for j in range(3):
                    if add[A[i, j], B[i, j]] != 0:
                        ok = False
                        break
                if not ok:
                    break
            if ok and det3(G, add, mul, neg) != 0:
                count += 1
    return count


@njit(cache=True)
def count_invertible_span(basis, add, mul, neg):
    """Number of invertible matrices in the span (over the full field) of the given basis."""
    Q = add.shape[0]
    k = basis.shape[0]
    g = np.zeros((3, 3), dtype=np.int64)
    coef = np.zeros(k, dtype=np.int64)
    count = 0
    total = 1
    for _ in range(k):
        total *= Q
    for idx in range(total):
        rem = idx
        for t in range(k):
            coef[t] = rem % Q
            rem //= Q
        for i in range(3):
            for j in range(3):
                s = 0
                for t in range(k):
                    s = add[s, mul[coef[t], basis[t, i, j]]]
                g[i, j] = s
        if det3(g, add, mul, neg) != 0:
            count += 1
    return count
