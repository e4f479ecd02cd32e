"""Character degree data of a few small finite groups of Lie type.

Each family is stored as a list of (multiplicity, degree) pairs of sympy
expressions in q, one list per congruence branch.  The same data serves
exact evaluation at a given q and the symbolic identity
sum m(q) d(q)^2 = |G|(q).
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy as sp
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .modring import FqField, is_prime

q = sp.Symbol("q")
R = sp.Rational

SL3_BRANCHES = {
    1: [
        (1, 1), (1, q**2 + q), (q - 2, q**2 + q + 1),
        (6, (q + 1) * (q - 1)**2 / 3), (3, (q**2 + q + 1) * (q + 1) / 3),
        (R(1, 3) * (q + 2) * (q - 1), (q + 1) * (q - 1)**2),
        (R(1, 2) * (q**2 - q), q**3 - 1),
        (1, q**3), (q - 2, q**3 + q**2 + q),
        (R(1, 6) * (q - 1) * (q - 4), (q**2 + q + 1) * (q + 1)),
    ],
    2: [
        (1, 1), (1, q**2 + q), (q - 2, q**2 + q + 1),
        (R(1, 3) * (q**2 + q), (q + 1) * (q - 1)**2),
        (R(1, 2) * (q**2 - q), q**3 - 1),
        (1, q**3), (q - 2, q**3 + q**2 + q),
        (R(1, 6) * (q - 2) * (q - 3), (q**2 + q + 1) * (q + 1)),
    ],
}

SU3_BRANCHES = {
    2: [
        (1, 1), (1, q**2 - q), (q, q**2 - q + 1),
        (6, (q - 1) * (q + 1)**2 / 3), (3, (q**2 - q + 1) * (q - 1) / 3),
        (R(1, 3) * (q + 1) * (q - 2), (q - 1) * (q + 1)**2),
        (R(1, 2) * (q + 1) * (q - 2), q**3 + 1),
        (1, q**3), (q, q**3 - q**2 + q),
        (R(1, 6) * (q + 1) * (q - 2), (q**2 - q + 1) * (q - 1)),
    ],
    1: [
        (1, 1), (1, q**2 - q), (q, q**2 - q + 1),
        (R(1, 3) * (q**2 - q), (q - 1) * (q + 1)**2),
        (R(1, 2) * (q + 1) * (q - 2), q**3 + 1),
        (1, q**3), (q, q**3 - q**2 + q),
        (R(1, 6) * (q**2 - q), (q**2 - q + 1) * (q - 1)),
    ],
}

GL2_TERMS = [(q - 1, 1), (q - 1, q), ((q - 1) * (q - 2) / 2, q + 1), ((q - 1) * q / 2, q - 1)]
GU2_TERMS = [(q + 1, 1), (q + 1, q), ((q + 1) * (q - 2) / 2, q + 1), ((q + 1) * q / 2, q - 1)]
HEIS_TERMS = [(q**2, 1), (q - 1, q)]

ORDERS = {
    "SL3": q**3 * (q**2 - 1) * (q**3 - 1),
    "SU3": q**3 * (q**2 - 1) * (q**3 + 1),
    "GL2": (q**2 - 1) * (q**2 - q),
    "GU2": q * (q + 1) * (q**2 - 1),
    "H": q**3,
}


def _prime_power(n: int):
    for p in range(2, n + 1):
        if n % p == 0:
            k, m = 0, n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 and is_prime(p) else None
    return None


def _check_q(n):
    if _prime_power(n) is None:
        raise ValueError(f"{n} is not a prime power")


def terms(group: str, qv: int | None = None, branch: int | None = None):
    """(multiplicity, degree) pairs for the branch of q (or the given branch)."""
    if group in ("SL3", "SU3"):
        br = branch if branch is not None else qv % 3
        if br == 0:
            raise ValueError("q divisible by 3 is not covered")
        return (SL3_BRANCHES if group == "SL3" else SU3_BRANCHES)[br]
    return {"GL2": GL2_TERMS, "GU2": GU2_TERMS, "H": HEIS_TERMS}[group]


@dataclass
class DegreeMultiset:
    group: str
    q: int
    degrees: dict = field(default_factory=dict)  # degree -> multiplicity

    @property
    def class_count(self) -> int:
        return sum(self.degrees.values())

    @property
    def sum_md2(self) -> int:
        return sum(m * d * d for d, m in self.degrees.items())

    def items(self):
        return sorted(self.degrees.items())

    def as_dirichlet(self):
        return dict(self.degrees)

    def to_json(self, classes_bruteforce=None) -> str:
        checks = {"sum_md2": self.sum_md2, "order": group_order(self.group, self.q)}
        if classes_bruteforce is not None:
            checks["classes_bruteforce"] = classes_bruteforce
        return json.dumps({"group": self.group, "q": self.q,
                           "degrees": [{"d": d, "m": m} for d, m in self.items()],
                           "checks": checks}, sort_keys=True)


def _evaluate(group, qv):
    _check_q(qv)
    out = {}
    for m, d in terms(group, qv):
        mv = Fraction(str(sp.sympify(m).subs(q, qv)))
        dv = Fraction(str(sp.sympify(d).subs(q, qv)))
        if mv.denominator != 1 or mv < 0:
            raise ArithmeticError(f"multiplicity {mv} at q = {qv} is not a nonnegative integer")
        if dv.denominator != 1 or dv <= 0:
            raise ArithmeticError(f"degree {dv} at q = {qv} is not a positive integer")
        if mv:
            out[int(dv)] = out.get(int(dv), 0) + int(mv)
    return DegreeMultiset(group, qv, out)


def zeta_sl3_fq(qv: int) -> DegreeMultiset:
    return _evaluate("SL3", qv)


def zeta_su3_fq(qv: int) -> DegreeMultiset:
    return _evaluate("SU3", qv)


def zeta_gl2_fq(qv: int) -> DegreeMultiset:
    return _evaluate("GL2", qv)


def zeta_gu2_fq(qv: int) -> DegreeMultiset:
    return _evaluate("GU2", qv)


def zeta_heisenberg_fq(qv: int) -> DegreeMultiset:
    return _evaluate("H", qv)


ZETA = {"SL3": zeta_sl3_fq, "SU3": zeta_su3_fq, "GL2": zeta_gl2_fq,
        "GU2": zeta_gu2_fq, "H": zeta_heisenberg_fq}


def group_order(group: str, qv: int) -> int:
    return int(ORDERS[group].subs(q, qv))


def polynomial_identity(group: str, branch: int | None = None) -> bool:
    """sum m(q) d(q)^2 - |G|(q) expands to zero."""
    lhs = sum(sp.sympify(m) * sp.sympify(d)**2 for m, d in terms(group, branch=branch or 1))
    return sp.expand(lhs - ORDERS[group]) == 0


def all_identities() -> dict:
    out = {}
    for g in ("SL3", "SU3"):
        for br in (1, 2):
            out[f"{g}, q = {br} mod 3"] = polynomial_identity(g, br)
    for g in ("GL2", "GU2", "H"):
        out[g] = polynomial_identity(g)
    return out


# -- brute force -------------------------------------------------------------------

def _field_for(group, qv):
    p, f = _prime_power(qv)
    if group in ("SU3", "GU2"):
        if f != 1:
            raise ValueError("unitary groups only over prime fields")
        return FqField(p, 2)
    if f > 2:
        raise ValueError("only q = p or p^2 supported")
    return FqField(p, f)


def _matmul(F, A, B):
    """Batched product of code matrices A (N,k,k) and B (M,k,k) or (k,k)."""
    k = A.shape[-1]
    add, mul = F.add_table, F.mul_table
    C = np.zeros(np.broadcast_shapes(A.shape, B.shape), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            acc = mul[A[..., i, 0], B[..., 0, j]]
            for t in range(1, k):
                acc = add[acc, mul[A[..., i, t], B[..., t, j]]]
            C[..., i, j] = acc
    return C


def _det(F, A):
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    if A.shape[-1] == 2:
        return add[mul[A[..., 0, 0], A[..., 1, 1]], neg[mul[A[..., 0, 1], A[..., 1, 0]]]]
    a = lambda i, j: A[..., i, j]
    t1 = mul[a(0, 0), add[mul[a(1, 1), a(2, 2)], neg[mul[a(1, 2), a(2, 1)]]]]
    t2 = mul[a(0, 1), add[mul[a(1, 0), a(2, 2)], neg[mul[a(1, 2), a(2, 0)]]]]
    t3 = mul[a(0, 2), add[mul[a(1, 0), a(2, 1)], neg[mul[a(1, 1), a(2, 0)]]]]
    return add[add[t1, neg[t2]], t3]


def _all_matrices(Q, k, chunk):
    start = 0
    total = Q ** (k * k)
    while start < total:
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        M = np.empty((idx.size, k * k), dtype=np.int64)
        for t in range(k * k):
            M[:, t] = idx % Q
            idx //= Q
        yield M.reshape(-1, k, k)
        start += chunk


def group_elements(group: str, qv: int, budget: int = 2 * 10**7) -> tuple:
    """All elements of the group as an (N, k, k) code array, with the field."""
    F = _field_for(group, qv)
    if group == "H":
        p = F.q
        a, b, c = np.meshgrid(np.arange(p), np.arange(p), np.arange(p), indexing="ij")
        N = p ** 3
        G = np.zeros((N, 3, 3), dtype=np.int64)
        G[:, 0, 0] = G[:, 1, 1] = G[:, 2, 2] = 1
        G[:, 0, 1], G[:, 1, 2], G[:, 0, 2] = a.ravel(), b.ravel(), c.ravel()
        return G, F
    k = 3 if group in ("SL3", "SU3") else 2
    if F.q ** (k * k) > budget:
        raise ValueError(f"enumerating {F.q ** (k * k)} matrices exceeds the budget {budget}")
    keep = []
    eye = np.eye(k, dtype=np.int64)
    for M in _all_matrices(F.q, k, 1 << 18):
        d = _det(F, M)
        if group == "SL3":
            ok = d == 1
        elif group == "GL2":
            ok = d != 0
        else:
            H = F.conj_table[M].transpose(0, 2, 1)
            ok = np.all(_matmul(F, H, M) == eye, axis=(1, 2))
            if group == "SU3":
                ok &= d == 1
        keep.append(M[ok])
    return np.concatenate(keep), F


def _codes(M, Q):
    k2 = M.shape[-1] ** 2
    flat = M.reshape(M.shape[0], k2)
    return flat @ (Q ** np.arange(k2, dtype=np.int64))


def _inverse_of(F, G, g):
    """The element of G inverse to g (found by search; G is small)."""
    prods = _matmul(F, G, g)
    eye = np.eye(g.shape[0], dtype=np.int64)
    hit = np.flatnonzero(np.all(prods == eye, axis=(1, 2)))
    return G[hit[0]]


def class_number_bruteforce(group: str, qv: int, seed: int = 0, max_order: int = 10**6) -> int:
    """Number of conjugacy classes, as connected components of the graph
    g -- h g h^-1 for h in a generating set."""
    G, F = group_elements(group, qv)
    N = G.shape[0]
    if N > max_order:
        raise ValueError(f"group of order {N} exceeds the budget {max_order}")
    codes = _codes(G, F.q)
    order = np.argsort(codes)
    sorted_codes = codes[order]

    def index(M):
        pos = np.searchsorted(sorted_codes, _codes(M, F.q))
        return order[pos]

    rng = np.random.default_rng(seed)
    gens = []
    while True:
        gens.append(G[rng.integers(N)])
        src = np.concatenate([np.arange(N)] * len(gens))
        dst = np.concatenate([index(_matmul(F, G, h)) for h in gens])
        n_cos, _ = connected_components(coo_matrix((np.ones(src.size), (src, dst)), shape=(N, N)),
                                        directed=True, connection="weak")
        if n_cos == 1:
            break
    src, dst = [], []
    for h in gens:
        hi = _inverse_of(F, G, h)
        src.append(np.arange(N))
        dst.append(index(_matmul(F, _matmul(F, h, G), hi)))
    src, dst = np.concatenate(src), np.concatenate(dst)
    n, _ = connected_components(coo_matrix((np.ones(src.size), (src, dst)), shape=(N, N)),
                                directed=True, connection="weak")
    return int(n)
