"""numba kernels for bulk profile computation.

Profiles are encoded as sum_i a_i (n+1)^i over the sorted entries.
"""

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _inv_mod(a, m):
    t, newt, r, newr = 0, 1, m, a % m
    while newr != 0:
        qq = r // newr
        t, newt = newt, t - qq * newt
        r, newr = newr, r - qq * newr
    if t < 0:
        t += m
    return t


@njit(cache=True)
def _val(x, p, n):
    if x == 0:
        return n
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


@njit(cache=True)
def profile_code(A, d, p, n, mod, act):
    """Destroys A.  Same pivot rule as eldiv.antisym_profile."""
    m = d
    for i in range(d):
        act[i] = i
    code = 0
    base = 1
    npairs = 0
    while m >= 2:
        bv = n
        bi = -1
        bj = -1
        for ii in range(m):
            i = act[ii]
            for jj in range(ii + 1, m):
                v = _val(A[i, act[jj]], p, n)
                if v < bv:
                    bv = v
                    bi = ii
                    bj = jj
                    if v == 0:
                        break
            if bv == 0:
                break
        if bi < 0:
            break
        i = act[bi]
        j = act[bj]
        pa = 1
        for _ in range(bv):
            pa *= p
        inv = _inv_mod(A[i, j] // pa, mod // pa)
        for kk in range(m):
            k = act[kk]
            if k == i or k == j:
                continue
            alpha = (A[i, k] // pa) * inv % mod
            beta = (A[j, k] // pa) * inv % mod
            if alpha == 0 and beta == 0:
                continue
            for rr in range(m):
                r = act[rr]
                A[r, k] = (A[r, k] - alpha * A[r, j] + beta * A[r, i]) % mod
            for cc in range(m):
                c = act[cc]
                A[k, c] = (A[k, c] - alpha * A[j, c] + beta * A[i, c]) % mod
        # drop i and j, keeping order
        w = 0
        for kk in range(m):
            if kk != bi and kk != bj:
                act[w] = act[kk]
                w += 1
        m -= 2
        code += bv * base
        base *= n + 1
        npairs += 1
    for _ in range(npairs, d // 2):
        code += n * base
        base *= n + 1
    return code


@njit(cache=True)
def _fill(A, ii, jj, hh, cc, y, mod):
    A[:, :] = 0
    for t in range(ii.shape[0]):
        i = ii[t]
        j = jj[t]
        A[i, j] += cc[t] * y[hh[t]]
    d = A.shape[0]
    for i in range(d):
        for j in range(i + 1, d):
            v = A[i, j] % mod
            A[i, j] = v
            A[j, i] = (mod - v) % mod


@njit(parallel=True, cache=True)
def enumerate_level(ii, jj, hh, cc, d, p, n, ncodes):
    """Tally profile codes over all primitive y in (Z/p^n)^d.

    The outer parallel loop runs over the first two coordinates.
    """
    mod = p ** n
    nchunks = mod * mod
    tallies = np.zeros((nchunks, ncodes), dtype=np.int64)
    for chunk in prange(nchunks):
        y = np.zeros(d, dtype=np.int64)
        y[0] = chunk // mod
        y[1] = chunk % mod
        A = np.zeros((d, d), dtype=np.int64)
        act = np.zeros(d, dtype=np.int64)
        inner = 1
        for _ in range(d - 2):
            inner *= mod
        for idx in range(inner):
            rem = idx
            for t in range(d - 1, 1, -1):
                y[t] = rem % mod
                rem //= mod
            prim = False
            for t in range(d):
                if y[t] % p != 0:
                    prim = True
                    break
            if not prim:
                continue
            _fill(A, ii, jj, hh, cc, y, mod)
            tallies[chunk, profile_code(A, d, p, n, mod, act)] += 1
    out = np.zeros(ncodes, dtype=np.int64)
    for chunk in range(nchunks):
        out += tallies[chunk]
    return out


@njit(cache=True)
def profile_codes_for(ii, jj, hh, cc, d, p, n, Y):
    mod = p ** n
    out = np.empty(Y.shape[0], dtype=np.int64)
    A = np.zeros((d, d), dtype=np.int64)
    act = np.zeros(d, dtype=np.int64)
    for s in range(Y.shape[0]):
        _fill(A, ii, jj, hh, cc, Y[s], mod)
        out[s] = profile_code(A, d, p, n, mod, act)
    return out


def sparse_constants(lam):
    """Upper-triangle nonzero structure constants as flat int64 arrays."""
    d = lam.shape[0]
    ii, jj, hh, cc = [], [], [], []
    for i in range(d):
        for j in range(i + 1, d):
            for h in range(d):
                if lam[i, j, h]:
                    ii.append(i)
                    jj.append(j)
                    hh.append(h)
                    cc.append(int(lam[i, j, h]))
    return tuple(np.array(v, dtype=np.int64) for v in (ii, jj, hh, cc))


def decode(code: int, n: int, length: int) -> tuple:
    out = []
    for _ in range(length):
        out.append(code % (n + 1))
        code //= n + 1
    return tuple(out)
