"""The p-adic integral Z(r, t): truncated sums, the link to the Poincare
series, the closed forms for A2, and rank <= 2 cone sums.

Exponent conventions.  For a point (x, y) with |x| = q^{-n} and y primitive,
the integrand is q^{-(n t + c r)} with c = 2 sum_{j <= J} min(a_j, n), where
a is the profile of R(y) mod p^n and J is the number of minor families in
the product (J = d // 2 by default).  For the A2 lattices a_4 = n always, so
J = 3 together with t = 3s - d - 1 gives the same sum as J = 4 with
t = 4s - d - 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
import sympy
from numba import njit

from . import _profile_kernels as K
from ._profile_kernels import _inv_mod as K_inv_mod
from .eldiv import antisym_profile
from .lattice import LieLattice, commutator_matrix
from .poincare import ProfileCensus, t_degree
from .ratfun import RatFunQT, q as Q, t as T


@dataclass(frozen=True)
class IntegrandExponent:
    n: int
    c: int

    def value(self, q: int, r, t) -> Fraction:
        return _qpow(q, -(self.n * Fraction(t) + self.c * Fraction(r)))


def _qpow(q: int, e) -> Fraction:
    e = Fraction(e)
    if e.denominator != 1:
        raise ValueError(f"non-integral exponent {e}; value would be irrational")
    return Fraction(q) ** int(e)


def _check_primitive(y, p):
    if not (np.asarray(y, dtype=np.int64) % p).any():
        raise ValueError("y is not primitive")


def integrand_exponent(L: LieLattice, n: int, y, p: int, jmax: int | None = None) -> IntegrandExponent:
    """Profile route: c = 2 sum_{j <= jmax} min(a_j, n)."""
    _check_primitive(y, p)
    jmax = L.d // 2 if jmax is None else jmax
    M = commutator_matrix(L).evaluate(y, p ** n)
    a = antisym_profile(M, p, n)
    return IntegrandExponent(n, 2 * sum(min(x, n) for x in a[:jmax]))


def _int_det(rows):
    """Bareiss fraction-free determinant over Z."""
    A = [list(r) for r in rows]
    m = len(A)
    if m == 0:
        return 1
    sign, prev = 1, 1
    for k in range(m - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, m) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[m - 1][m - 1]


def _pval(x: int, p: int):
    if x == 0:
        return None
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def _centered(M, mod):
    M = np.asarray(M, dtype=np.int64) % mod
    return np.where(M > mod // 2, M - mod, M)


def literal_integrand_exponent(L: LieLattice, n: int, y, p: int, jmax: int | None = None,
                               all_minors: bool = False) -> IntegrandExponent:
    """Minor route: prod_j ||F_j(y) u F_{j-1}(y) x^2|| / ||F_{j-1}(y)|| at |x| = q^{-n}.

    F_j is the family of principal 2j x 2j minors of R(y) for an integer lift
    of y (all 2j x 2j minors when all_minors is set).  If both F_j and F_{j-1}
    vanish on the lift, the factor is taken as its limit |x|^2.
    """
    _check_primitive(y, p)
    jmax = L.d // 2 if jmax is None else jmax
    R = _centered(commutator_matrix(L).evaluate(np.asarray(y, dtype=np.int64) % p ** n), p ** n)
    R = R.tolist()
    d = L.d
    vals = [0]
    for j in range(1, jmax + 1):
        best = None
        rowsets = list(combinations(range(d), 2 * j))
        colsets = rowsets if all_minors else None
        for I in rowsets:
            for J in (colsets if all_minors else [I]):
                v = _pval(_int_det([[R[i][k] for k in J] for i in I]), p)
                if v is not None and (best is None or v < best):
                    best = v
        vals.append(best)
    c = 0
    for j in range(1, jmax + 1):
        cur, prev = vals[j], vals[j - 1]
        if prev is None:
            c += 2 * n
        elif cur is None:
            c += 2 * n
        else:
            c += min(cur, prev + 2 * n) - prev
    return IntegrandExponent(n, c)


# -- bulk version of the minor route ----------------------------------------

@njit(cache=True)
def _mulmod(a, b, m):
    """a * b mod m for 0 <= a, b < m < 2^50, via a float quotient estimate."""
    qq = np.int64(np.float64(a) * np.float64(b) / np.float64(m))
    r = np.int64(np.uint64(a) * np.uint64(b) - np.uint64(qq) * np.uint64(m))
    while r < 0:
        r += m
    while r >= m:
        r -= m
    return r


@njit(cache=True)
def _det_val(S, m, p, K, mod):
    """Valuation of det S over Z_p, capped at K, by full-pivot elimination mod p^K."""
    total = 0
    for k in range(m):
        bv = K
        bi = -1
        bj = -1
        for i in range(k, m):
            for j in range(k, m):
                x = S[i, j]
                if x != 0:
                    v = 0
                    while x % p == 0:
                        x //= p
                        v += 1
                    if v < bv:
                        bv = v
                        bi = i
                        bj = j
        if bi < 0:
            return K
        total += bv
        if total >= K:
            return K
        for c in range(m):
            tmp = S[k, c]
            S[k, c] = S[bi, c]
            S[bi, c] = tmp
        for r in range(m):
            tmp = S[r, k]
            S[r, k] = S[r, bj]
            S[r, bj] = tmp
        pa = 1
        for _ in range(bv):
            pa *= p
        inv = K_inv_mod(S[k, k] // pa, mod // pa)
        for i in range(k + 1, m):
            if S[i, k] != 0:
                f = _mulmod((S[i, k] // pa) % mod, inv, mod)
                for j in range(k, m):
                    S[i, j] = (S[i, j] - _mulmod(f, S[k, j], mod)) % mod
    return total


@njit(cache=True)
def _literal_c(R, subsets, sizes, jmax, p, n):
    d = R.shape[0]
    K = 2 * jmax * n + 1
    mod = 1
    for _ in range(K):
        mod *= p
    vals = np.full(jmax + 1, K, dtype=np.int64)
    vals[0] = 0
    S = np.zeros((d, d), dtype=np.int64)
    for s in range(subsets.shape[0]):
        m = sizes[s]
        j = m // 2
        if j > jmax:
            continue
        for a in range(m):
            for b in range(m):
                S[a, b] = R[subsets[s, a], subsets[s, b]] % mod
        v = _det_val(S, m, p, K, mod)
        if v < vals[j]:
            vals[j] = v
    c = 0
    for j in range(1, jmax + 1):
        if vals[j - 1] >= K or vals[j] >= K:
            c += 2 * n
        else:
            c += min(vals[j], vals[j - 1] + 2 * n) - vals[j - 1]
    return c


@njit(cache=True)
def _literal_batch(ii, jj, hh, cc, d, p, n, Y, subsets, sizes, jmax):
    mod = p ** n
    out = np.empty(Y.shape[0], dtype=np.int64)
    R = np.zeros((d, d), dtype=np.int64)
    for s in range(Y.shape[0]):
        R[:, :] = 0
        for k in range(ii.shape[0]):
            R[ii[k], jj[k]] += cc[k] * Y[s, hh[k]]
        for i in range(d):
            for j in range(i + 1, d):
                v = R[i, j] % mod
                if v > mod // 2:
                    v -= mod
                R[i, j] = v
                R[j, i] = -v
        out[s] = _literal_c(R, subsets, sizes, jmax, p, n)
    return out


@njit(cache=True)
def _profile_c_batch(ii, jj, hh, cc, d, p, n, Y, jmax):
    codes = K.profile_codes_for(ii, jj, hh, cc, d, p, n, Y)
    out = np.empty(Y.shape[0], dtype=np.int64)
    for s in range(Y.shape[0]):
        code = codes[s]
        c = 0
        for j in range(d // 2):
            a = code % (n + 1)
            code //= n + 1
            if j < jmax:
                c += 2 * min(a, n)
        out[s] = c
    return out


def _principal_subsets(d, jmax):
    rows = [I for j in range(1, jmax + 1) for I in combinations(range(d), 2 * j)]
    subsets = np.zeros((len(rows), d), dtype=np.int64)
    sizes = np.zeros(len(rows), dtype=np.int64)
    for k, I in enumerate(rows):
        subsets[k, : len(I)] = I
        sizes[k] = len(I)
    return subsets, sizes


def dual_path_exponents(L: LieLattice, p: int, n: int, Y, jmax: int | None = None):
    """(profile route c, minor route c) for every row of Y."""
    jmax = L.d // 2 if jmax is None else jmax
    if p ** (2 * jmax * n + 1) >= 2 ** 50:
        raise ValueError("bulk minor route needs p^(2 J n + 1) < 2^50; use literal_integrand_exponent")
    Y = np.ascontiguousarray(np.asarray(Y, dtype=np.int64) % p ** n)
    sc = K.sparse_constants(L.lam)
    subsets, sizes = _principal_subsets(L.d, jmax)
    prof = _profile_c_batch(*sc, L.d, p, n, Y, jmax)
    lit = _literal_batch(*sc, L.d, p, n, Y, subsets, sizes, jmax)
    return prof, lit


def primitive_vectors(p: int, n: int, d: int) -> np.ndarray:
    mod = p ** n
    grid = np.indices((mod,) * d).reshape(d, -1).T
    return grid[(grid % p != 0).any(axis=1)]


# -- truncated integral and the link ------------------------------------------

def Z_truncated(census: ProfileCensus, r, t, n_max: int | None = None,
                jmax: int | None = None) -> Fraction:
    q, d = census.p, census.d
    n_max = census.n_max if n_max is None else n_max
    if not census.exact or any(n not in census.levels for n in range(1, n_max + 1)):
        raise ValueError(f"census does not cover levels 1..{n_max} exactly")
    jmax = d // 2 if jmax is None else jmax
    r, t = Fraction(r), Fraction(t)
    total = Fraction(0)
    for n in range(1, n_max + 1):
        inner = Fraction(0)
        for a, cnt in census.levels[n].items():
            c = 2 * sum(min(x, n) for x in a[:jmax])
            inner += cnt * _qpow(q, -c * r)
        total += (1 - Fraction(1, q)) * _qpow(q, -n * (t + 1)) * _qpow(q, -n * d) * inner
    return total


def poincare_truncated(census: ProfileCensus, s, n_max: int | None = None) -> Fraction:
    q = census.p
    n_max = census.n_max if n_max is None else n_max
    total = Fraction(1)
    for n in range(1, n_max + 1):
        for a, cnt in census.levels[n].items():
            total += cnt * _qpow(q, -t_degree(a, n) * Fraction(s))
    return total


@dataclass(frozen=True)
class LinkReport:
    p: int
    n_max: int
    s: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"p": self.p, "n_max": self.n_max, "s": str(self.s),
                "lhs": str(self.lhs), "rhs": str(self.rhs), "equal": self.equal}


def link_report(census: ProfileCensus, s, n_max: int | None = None, rho: int = 3) -> LinkReport:
    """P_trunc(s) - 1 against (1 - q^-1)^-1 Z_trunc(-s/2, rho s - d - 1) with rho minor families."""
    q, d = census.p, census.d
    n_max = census.n_max if n_max is None else n_max
    s = Fraction(s)
    lhs = poincare_truncated(census, s, n_max) - 1
    rhs = Z_truncated(census, -s / 2, rho * s - d - 1, n_max, jmax=rho) / (1 - Fraction(1, q))
    return LinkReport(q, n_max, s, lhs, rhs)


def link_check(census: ProfileCensus, s, n_max: int | None = None, rho: int = 3) -> bool:
    return link_report(census, s, n_max, rho).equal


# -- closed forms -----------------------------------------------------------

def irregular_count(variant: str, q):
    """Number of nonzero irregular residue classes mod p."""
    if variant == "sl3":
        return (q ** 2 + q + 1) ** 2 * (q - 1)
    if variant == "su3":
        return (q ** 4 + q ** 2 + 1) * (q - 1)
    raise ValueError(f"unknown variant {variant!r}")


def _require_convergent(q, r, t):
    if not (1 + t > 0 and 4 + 2 * r + t > 0):
        raise ValueError(f"(r, t) = ({r}, {t}) outside the convergence region")


def closed_Z0_Z1(q: int, r, t):
    r, t = Fraction(r), Fraction(t)
    _require_convergent(q, r, t)
    qi = Fraction(1, q)
    z0 = _qpow(q, -9 - t) * (1 - qi) / (1 - _qpow(q, -1 - t))
    z1 = (_qpow(q, -9 - 2 * r - t) * (1 - _qpow(q, -4 - t)) * (1 - qi)
          / ((1 - _qpow(q, -4 - 2 * r - t)) * (1 - _qpow(q, -1 - t))))
    return z0, z1


def closed_Z(variant: str, q: int, r, t) -> Fraction:
    z0, z1 = closed_Z0_Z1(q, r, t)
    v = irregular_count(variant, q)
    return (q ** 8 - 1 - v) * z0 + v * z1


def Z_tail_bound(census: ProfileCensus, r, t, n_max: int | None = None) -> Fraction:
    """Bound on levels > n_max for r <= 0 (summands are then at most q^{-n(t+1) - 2 n r jmax})."""
    q, d = census.p, census.d
    n_max = census.n_max if n_max is None else n_max
    r, t = Fraction(r), Fraction(t)
    # level n has fewer than q^{dn} points and c <= 2 * 3 * n for three families
    ratio = _qpow(q, -(t + 1) - 6 * r)
    if ratio >= 1:
        raise ValueError("tail bound needs a convergent geometric ratio")
    first = ratio ** (n_max + 1)
    return (1 - Fraction(1, q)) * first / (1 - ratio)


def closed_poincare_via_integral(variant: str) -> RatFunQT:
    """1 + (1 - q^-1)^-1 Z(-s/2 - 1, 3s - 3) as a function of t = q^-s; this is P(s+2)."""
    # q^{-r_param} with r = -s/2 - 1, t_param = 3s - 3; t = q^{-s}
    qr = Q / T ** sympy.Rational(1, 2)      # q^{-r} = q^{s/2 + 1}
    qt = Q ** -3 * T ** -3                   # q^{t_param} = q^{3s - 3}
    z0 = Q ** -9 / qt * (1 - 1 / Q) / (1 - 1 / (Q * qt))
    z1 = (Q ** -9 * qr ** 2 / qt * (1 - Q ** -4 / qt) * (1 - 1 / Q)
          / ((1 - Q ** -4 * qr ** 2 / qt) * (1 - 1 / (Q * qt))))
    v = irregular_count(variant, Q)
    Z = (Q ** 8 - 1 - v) * z0 + v * z1
    return RatFunQT(sympy.cancel(1 + Z / (1 - 1 / Q)))


def geometric_closed(x1, x2, x3):
    return x1 * x2 * x3 * (1 - x1 * x2) / ((1 - x1 * x2 * x3) * (1 - x1) * (1 - x2))


def geometric_partial(x1, x2, x3, N: int):
    return sum(x1 ** l * x2 ** n * x3 ** min(l, n) for l in range(1, N + 1) for n in range(1, N + 1))


# -- cone sums of rank <= 2 -----------------------------------------------------

def _as_expr(w):
    if isinstance(w, tuple):
        a, b = w
        return Q ** a * T ** b
    return sympy.sympify(w)


def _sum1d(W, groups, start):
    """sum_{m >= start} W^m prod_G G^{min_i(u_i m + delta_i)}, u_i >= 0 integers."""
    deltas = [dl for _, forms in groups for _, dl in forms]
    spread = (max(deltas) - min(deltas)) if deltas else 0
    M = max(start, spread + 1)
    total = 0
    for m in range(start, M):
        term = W ** m
        for G, forms in groups:
            term *= G ** min(u * m + dl for u, dl in forms)
        total += term
    ratio, const = W, 1
    for G, forms in groups:
        u, dl = min(forms)
        ratio *= G ** u
        const *= G ** dl
    return total + const * ratio ** M / (1 - ratio)


def xi_cone_expr(k: int, weights, groups):
    """sum over m in N_{>=1}^k of prod_i w_i^{m_i} prod_G G^{min_iota(L_iota . m + delta_iota)}.

    weights: k monomials; groups: list of (G, [(coefficient vector, delta), ...]).
    Monomials are sympy expressions or (a, b) meaning q^a t^b.  For k = 2 the
    coefficient vectors must lie in {0, 1}^2.
    """
    if k not in (1, 2):
        raise ValueError("cone sums are implemented for rank k <= 2 only")
    if len(weights) != k:
        raise ValueError("need one weight per summation variable")
    w = [_as_expr(x) for x in weights]
    gs = [(_as_expr(G), [(tuple(c), int(dl)) for c, dl in forms]) for G, forms in groups]
    for _, forms in gs:
        if not forms:
            raise ValueError("empty min group")
        for c, _ in forms:
            if len(c) != k or any(x < 0 for x in c):
                raise ValueError("coefficient vectors must be nonnegative of length k")
    if k == 1:
        return sympy.cancel(_sum1d(w[0], [(G, [(c[0], dl) for c, dl in f]) for G, f in gs], 1))
    for _, forms in gs:
        if any(x not in (0, 1) for c, _ in forms for x in c):
            raise ValueError("rank-2 cone sums need coefficients in {0, 1}")
    deltas = [dl for _, forms in gs for _, dl in forms]
    M0 = max(deltas) - min(deltas) + 1
    w1, w2 = w
    total = 0
    # m1 < M0
    for m1 in range(1, M0):
        total += w1 ** m1 * _sum1d(w2, [(G, [(c[1], c[0] * m1 + dl) for c, dl in f]) for G, f in gs], 1)
    # m2 < M0 <= m1
    for m2 in range(1, M0):
        total += w2 ** m2 * _sum1d(w1, [(G, [(c[0], c[1] * m2 + dl) for c, dl in f]) for G, f in gs], M0)
    # both >= M0, |m1 - m2| < M0: m1 = m2 + e
    for e in range(-M0 + 1, M0):
        start = max(M0, M0 - e)
        total += w1 ** e * _sum1d(w1 * w2, [(G, [(c[0] + c[1], c[0] * e + dl) for c, dl in f])
                                            for G, f in gs], start)
    # far regions: the minimizing form is fixed there
    for lead, other, wl, wo in ((0, 1, w1, w2), (1, 0, w2, w1)):
        # m_lead = b + M0 + j, m_other = b, b >= M0, j >= 0
        rb, rj, const = wl * wo, wl, wl ** M0
        for G, forms in gs:
            c, dl = min(forms, key=lambda f: (f[0][lead], f[0][other], f[1]))
            cl, co = c[lead], c[other]
            rb *= G ** (cl + co)
            rj *= G ** cl
            const *= G ** (cl * M0 + dl)
        total += const * rb ** M0 / ((1 - rb) * (1 - rj))
    return sympy.cancel(total)


def xi_cone(k: int, weights, groups) -> RatFunQT:
    return RatFunQT(xi_cone_expr(k, weights, groups))
