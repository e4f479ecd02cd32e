"""Elementary-divisor profiles of antisymmetric matrices over Z/p^n."""

from itertools import combinations

import numpy as np


def _val(x: int, p: int, n: int) -> int:
    if x == 0:
        return n
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return min(k, n)


def _as_rows(M, mod):
    rows = [[int(v) % mod for v in row] for row in np.asarray(M).tolist()]
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise ValueError("matrix must be square")
    return rows


def check_antisymmetric(rows, mod):
    d = len(rows)
    for i in range(d):
        if rows[i][i] % mod:
            return False
        for j in range(i + 1, d):
            if (rows[i][j] + rows[j][i]) % mod:
                return False
    return True


def antisym_profile(M, p: int, n: int) -> tuple:
    """Truncated paired valuations (a_1 <= ... <= a_{d//2}) of M over Z/p^n.

    Congruence reduction: pivot on the lexicographically first entry of
    minimal valuation above the diagonal, normalize it to p^a, clear its
    two rows and columns, recurse on the complement.
    """
    mod = p ** n
    A = _as_rows(M, mod)
    if not check_antisymmetric(A, mod):
        raise ValueError("matrix is not antisymmetric mod p^n")
    d = len(A)
    active = list(range(d))
    found = []
    while len(active) >= 2:
        best = None
        for ii, i in enumerate(active):
            for j in active[ii + 1:]:
                v = _val(A[i][j], p, n)
                if best is None or v < best[0]:
                    best = (v, i, j)
        a, i, j = best
        if a >= n:
            break
        found.append(a)
        pa = p ** a
        piv = A[i][j] // pa  # unit mod p^(n-a)
        inv = pow(piv, -1, p ** (n - a)) if n > a else 0
        rest = [k for k in active if k not in (i, j)]
        for k in rest:
            alpha = (A[i][k] // pa) * inv % mod
            beta = (A[j][k] // pa) * inv % mod
            # row/col k <- k - alpha * j + beta * i
            for r in range(d):
                A[r][k] = (A[r][k] - alpha * A[r][j] + beta * A[r][i]) % mod
            for c in range(d):
                A[k][c] = (A[k][c] - alpha * A[j][c] + beta * A[i][c]) % mod
        active = rest
    found += [n] * (d // 2 - len(found))
    return tuple(sorted(found))


def _pfaffians(A):
    """Pfaffians of all principal submatrices on even index sets, keyed by bitmask."""
    d = len(A)
    pf = {0: 1}
    for size in range(2, d + 1, 2):
        for idx in combinations(range(d), size):
            first, rest = idx[0], idx[1:]
            total = 0
            for pos, j in enumerate(rest):
                mask = 0
                for k in rest:
                    if k != j:
                        mask |= 1 << k
                total += (-1) ** pos * A[first][j] * pf[mask]
            mask = 0
            for k in idx:
                mask |= 1 << k
            pf[mask] = total
    return pf


def profile_via_minors(M, p: int, n: int) -> tuple:
    """Oracle: a_1 + ... + a_j = min over principal 2j x 2j minors of half their valuation.

    Principal minors of an antisymmetric matrix are squares of Pfaffians, so
    half the minor valuation is the Pfaffian valuation.  The integer lift of
    M is used; entries of the lift that reach n are truncated back to n.
    """
    mod = p ** n
    A = _as_rows(M, mod)
    if not check_antisymmetric(A, mod):
        raise ValueError("matrix is not antisymmetric mod p^n")
    # use the symmetric-range lift so that A is antisymmetric over Z
    d = len(A)
    L = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            L[i][j] = A[i][j]
            L[j][i] = -A[i][j]
    pf = _pfaffians(L)
    sums = [0]
    for j in range(1, d // 2 + 1):
        vals = [_int_val(v, p) for mask, v in pf.items() if bin(mask).count("1") == 2 * j]
        finite = [v for v in vals if v is not None]
        sums.append(min(finite) if finite else None)
    out = []
    for j in range(1, d // 2 + 1):
        if sums[j] is None or (out and out[-1] >= n):
            out.append(n)
        else:
            out.append(min(sums[j] - sums[j - 1], n))
    return tuple(out)


def _int_val(x: int, p: int):
    if x == 0:
        return None
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def rank_mod_p(M, p: int) -> int:
    rows = [[int(v) % p for v in row] for row in np.asarray(M).tolist()]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def kernel_size(M, p: int, n: int) -> int:
    """|{z in (Z/p^n)^d : z M = 0}| via row and column reduction (no antisymmetry used)."""
    mod = p ** n
    A = [[int(v) % mod for v in row] for row in np.asarray(M).tolist()]
    rows, cols = len(A), len(A[0])
    size = 1
    r0 = 0
    exps = []
    while r0 < min(rows, cols):
        best = None
        for i in range(r0, rows):
            for j in range(r0, cols):
                v = _val(A[i][j], p, n)
                if v < n and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        a, i, j = best
        A[r0], A[i] = A[i], A[r0]
        for row in A:
            row[r0], row[j] = row[j], row[r0]
        pa = p ** a
        inv = pow(A[r0][r0] // pa, -1, p ** (n - a))
        for i in range(r0 + 1, rows):
            f = (A[i][r0] // pa) * inv % mod
            if f:
                A[i] = [(x - f * y) % mod for x, y in zip(A[i], A[r0])]
        for j in range(r0 + 1, cols):
            f = (A[r0][j] // pa) * inv % mod
            if f:
                for row in A:
                    row[j] = (row[j] - f * row[r0]) % mod
        exps.append(a)
        r0 += 1
    # z M = 0 decouples per diagonal entry p^a: p^a solutions each; free rows: p^n each
    for a in exps:
        size *= p ** a
    size *= mod ** (rows - len(exps))
    return size
