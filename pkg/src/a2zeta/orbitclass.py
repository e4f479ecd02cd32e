"""Adjoint orbit types in sl3(F_q) and su3(F_{q^2}, F_q), censuses,
centraliser orders, the Cayley map and the Ennola orbit-size formula.

Matrices are 3x3 numpy arrays of field codes (see modring.FqField).  The
Hermitian form defining su3 and GU3 is the identity, so x lies in su3 iff
conj(x)^T = -x and trace x = 0.
"""

import csv
import io
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import _orbit_kernels as OK
from .modring import FqField

TYPES = ("T0", "T1", "T2", "T3", "T4a", "T4b", "T4c", "T5")
REGULARITY = {"T0": "zero", "T1": "reg", "T2": "irreg", "T3": "irreg",
              "T4a": "reg", "T4b": "reg", "T4c": "reg", "T5": "reg"}


@dataclass(frozen=True)
class OrbitType:
    tag: str

    @property
    def regularity(self) -> str:
        return REGULARITY[self.tag]

    @property
    def index(self) -> int:
        return TYPES.index(self.tag)


# -- reference tables ----------------------------------------------------------

def _order_sl3(q):
    return q ** 3 * (q ** 2 - 1) * (q ** 3 - 1)


def _order_su3(q):
    return q ** 3 * (q ** 2 - 1) * (q ** 3 + 1)


def order_gl3(q):
    return (q ** 3 - 1) * (q ** 3 - q) * (q ** 3 - q ** 2)


def order_gu3(q):
    return q ** 3 * (q + 1) * (q ** 2 - 1) * (q ** 3 + 1)


# (number of orbits, orbit size, centraliser order in SL3 / SU3) per type
def table_sl3(q):
    return {
        "T0": (1, 1, _order_sl3(q)),
        "T1": (1, (q ** 3 - 1) * (q ** 2 - 1) * q, gcd(q - 1, 3) * q ** 2),
        "T2": (1, (q ** 3 - 1) * (q + 1), (q - 1) * q ** 3),
        "T3": (q - 1, (q ** 2 + q + 1) * q ** 2, (q ** 2 - 1) * (q ** 2 - q)),
        "T4a": ((q - 1) * (q - 2) // 6, (q ** 2 + q + 1) * (q + 1) * q ** 3, (q - 1) ** 2),
        "T4b": ((q - 1) * q // 2, (q ** 3 - 1) * q ** 3, q ** 2 - 1),
        "T4c": ((q ** 2 - 1) // 3, (q + 1) * (q - 1) ** 2 * q ** 3, q ** 2 + q + 1),
        "T5": (q - 1, (q ** 3 - 1) * (q + 1) * q ** 2, (q - 1) * q),
    }


def table_su3(q):
    return {
        "T0": (1, 1, _order_su3(q)),
        "T1": (1, (q ** 3 + 1) * (q ** 2 - 1) * q, gcd(q + 1, 3) * q ** 2),
        "T2": (1, (q ** 3 + 1) * (q - 1), (q + 1) * q ** 3),
        "T3": (q - 1, (q ** 2 - q + 1) * q ** 2, q * (q + 1) * (q ** 2 - 1)),
        "T4a": ((q - 1) * (q - 2) // 6, (q ** 2 - q + 1) * (q - 1) * q ** 3, (q + 1) ** 2),
        "T4b": ((q - 1) * q // 2, (q ** 3 + 1) * q ** 3, q ** 2 - 1),
        "T4c": ((q ** 2 - 1) // 3, (q ** 2 - 1) * (q + 1) * q ** 3, q ** 2 - q + 1),
        "T5": (q - 1, (q ** 3 + 1) * (q - 1) * q ** 2, (q + 1) * q),
    }


def reference_table(algebra: str, q: int) -> dict:
    return table_sl3(q) if algebra == "sl3" else table_su3(q)


# Ennola data: (gamma, GL3(F_{q^2}) centraliser order)
def ennola_reference(q):
    return {
        "T1": ((q - 1) * q ** 2, (q ** 2 - 1) * q ** 4),
        "T2": ((q - 1) ** 2 * q ** 3, (q ** 2 - 1) ** 2 * q ** 6),
        # gamma carries (q - 1)^2, not q - 1; enumeration confirms it and only
        # this value gives the orbit size (q^2 - q + 1) q^2
        "T3": ((q ** 2 + 1) * (q - 1) ** 2 * q, (q ** 4 - 1) * (q ** 2 - 1) ** 2 * q ** 2),
        "T4a": ((q - 1) ** 3, (q ** 2 - 1) ** 3),
        "T4b": ((q + 1) * (q - 1) ** 2, (q ** 2 - 1) ** 3),
        "T4c": (q ** 3 - 1, q ** 6 - 1),
        "T5": ((q - 1) ** 2 * q, (q ** 2 - 1) ** 2 * q ** 2),
    }


# -- small matrix helpers over codes -------------------------------------------

def mat(F: FqField, rows) -> np.ndarray:
    return np.array([[F.join(*v) if isinstance(v, tuple) else F.join(v) for v in r]
                     for r in rows], dtype=np.int64)


def mmul(F, A, B):
    C = np.zeros((3, 3), dtype=np.int64)
    OK.mat_mul(A, B, C, F.add_table, F.mul_table)
    return C


def madd(F, A, B):
    return F.add_table[A, B]


def mneg(F, A):
    return F.neg_table[A]


def mscale(F, c, A):
    return F.mul_table[c, A]


def identity(F):
    return np.eye(3, dtype=np.int64)


def det(F, A) -> int:
    return int(OK.det3(A, F.add_table, F.mul_table, F.neg_table))


def trace(F, A) -> int:
    return F.add(F.add(int(A[0, 0]), int(A[1, 1])), int(A[2, 2]))


def conj_transpose(F, A):
    return F.conj_table[A].T.copy()


def minv(F, A):
    """Inverse by Gauss-Jordan elimination."""
    n = 3
    M = [[int(v) for v in A[i]] + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        iv = F.inv(M[c][c])
        M[c] = [F.mul(iv, v) for v in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[r], M[c])]
    return np.array([row[n:] for row in M], dtype=np.int64)


def is_antihermitian(F, x) -> bool:
    return np.array_equal(conj_transpose(F, x), mneg(F, x))


def is_unitary(F, g) -> bool:
    return np.array_equal(mmul(F, conj_transpose(F, g), g), identity(F))


# -- charpoly lookup ------------------------------------------------------------

def _roots(F, c1, c0):
    """Roots with multiplicity of X^3 + c1 X - c0 over F."""
    roots = []
    poly = [F.neg(c0), c1, 0, 1]  # low to high
    for r in range(F.q):
        while len(poly) > 1:
            # synthetic division by (X - r)
            acc, quot = 0, []
            for coeff in reversed(poly):
                acc = F.add(F.mul(acc, r), coeff)
                quot.append(acc)
            if quot[-1] != 0:
                break
            roots.append(r)
            poly = list(reversed(quot[:-1]))
    return roots


def charpoly_table(F: FqField, unitary: bool):
    """Lookup arrays (ctype, lam, mu) indexed by (c1, c0)."""
    Q = F.q
    ctype = np.zeros((Q, Q), dtype=np.int64)
    lam = np.zeros((Q, Q), dtype=np.int64)
    mu = np.zeros((Q, Q), dtype=np.int64)
    for c1 in range(Q):
        for c0 in range(Q):
            rs = _roots(F, c1, c0)
            distinct = sorted(set(rs))
            if len(rs) == 3 and len(distinct) == 1:
                ctype[c1, c0] = OK.NILPOTENT
            elif len(distinct) == 2:
                l = next(r for r in distinct if rs.count(r) == 2)
                m = next(r for r in distinct if rs.count(r) == 1)
                ctype[c1, c0] = OK.REPEATED
                lam[c1, c0], mu[c1, c0] = l, m
            elif len(distinct) == 3:
                if unitary and not all(F.conj(r) == F.neg(r) for r in distinct):
                    ctype[c1, c0] = TYPES.index("T4b")
                else:
                    ctype[c1, c0] = TYPES.index("T4a")
            elif len(distinct) == 1:
                # one simple root and an irreducible quadratic factor
                ctype[c1, c0] = TYPES.index("T4b") if not unitary else -99
            else:
                ctype[c1, c0] = TYPES.index("T4c")
    return ctype, lam, mu


_TABLE_CACHE = {}


def _tables(F, unitary):
    key = (F.p, F.f, unitary)
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = charpoly_table(F, unitary)
    return _TABLE_CACHE[key]


def _classify(F, x, unitary) -> OrbitType:
    ctype, lam, mu = _tables(F, unitary)
    W = [np.zeros((3, 3), dtype=np.int64) for _ in range(3)]
    ty, _, _ = OK.classify_one(np.ascontiguousarray(x, dtype=np.int64), ctype, lam, mu,
                               F.add_table, F.mul_table, F.neg_table, *W)
    if ty < 0:
        raise ArithmeticError("characteristic polynomial pattern impossible for su3")
    return OrbitType(TYPES[ty])


def classify_sl3(x, F: FqField) -> OrbitType:
    if F.p == 3:
        raise ValueError("characteristic 3 unsupported")
    if trace(F, x) != 0:
        raise ValueError("x is not traceless")
    return _classify(F, x, unitary=False)


def classify_su3(x, F: FqField) -> OrbitType:
    if F.f != 2 or F.p < 5:
        raise ValueError("su3 classification needs F_{q^2} with characteristic >= 5")
    if trace(F, x) != 0 or not is_antihermitian(F, x):
        raise ValueError("x is not a traceless antihermitian matrix")
    return _classify(F, x, unitary=True)


# -- algebras as F_q-spans -----------------------------------------------------

def algebra_field(algebra: str, q: int) -> FqField:
    if algebra == "sl3":
        return FqField(q, 1)
    if algebra == "su3":
        return FqField(q, 2)
    raise ValueError(f"unknown algebra {algebra!r}")


def algebra_basis(algebra: str, F: FqField) -> np.ndarray:
    """F_q-basis (8 matrices over F) of sl3(F_q) or su3(F_{q^2}, F_q)."""
    E = lambda i, j: np.eye(3, dtype=np.int64)[:, [i]] @ np.eye(3, dtype=np.int64)[[j], :]
    one, m1 = 1, F.neg(1)
    out = []
    if algebra == "sl3":
        out += [E(0, 0) + m1 * E(1, 1) % F.q, E(1, 1) + m1 * E(2, 2) % F.q]
        out += [E(i, j) for i in range(3) for j in range(3) if i != j]
        return np.array([b % F.q for b in out], dtype=np.int64)
    theta = F.join(0, 1)  # sqrt(delta)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        out.append(E(i, j) * one + E(j, i) * m1)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        out.append(E(i, j) * theta + E(j, i) * theta)
    out.append(E(0, 0) * theta + E(1, 1) * F.neg(theta))
    out.append(E(1, 1) * theta + E(2, 2) * F.neg(theta))
    return np.array(out, dtype=np.int64)


def element_from_index(basis, ncoef, idx, F):
    x = np.zeros((3, 3), dtype=np.int64)
    for t in range(basis.shape[0]):
        c = idx % ncoef
        idx //= ncoef
        if c:
            x = madd(F, x, mscale(F, c, basis[t]))
    return x


@dataclass
class Census:
    algebra: str
    q: int
    counts: dict
    orbits: dict
    representatives: dict


def census(algebra: str, q: int, max_elements: int = 7 ** 8) -> Census:
    if q ** 8 > max_elements:
        raise ValueError(f"census of {q ** 8} elements exceeds the budget {max_elements}")
    F = algebra_field(algebra, q)
    if algebra == "sl3" and F.p == 3 or algebra == "su3" and q < 5:
        raise ValueError(f"{algebra} census unsupported at q = {q}")
    basis = algebra_basis(algebra, F)
    ctype, lam, mu = _tables(F, algebra == "su3")
    counts, orbits, first = OK.census_kernel(basis, q, F.add_table, F.mul_table,
                                             F.neg_table, ctype, lam, mu)
    reps = {TYPES[i]: element_from_index(basis, q, int(first[i]), F)
            for i in range(8) if first[i] >= 0}
    return Census(algebra, q, {TYPES[i]: int(counts[i]) for i in range(8)},
                  {TYPES[i]: int(orbits[i]) for i in range(8)}, reps)


# -- centralisers -----------------------------------------------------------------

@dataclass
class GroupScan:
    order_full: int          # |GL3| or |GU3|
    order_special: int       # |SL3| or |SU3|
    cent_full: dict          # type -> centraliser order in GL3 / GU3
    cent_special: dict       # type -> centraliser order in SL3 / SU3


def group_scan(algebra: str, q: int, reps: dict) -> GroupScan:
    """Enumerate GL3(F_q) (sl3) or GU3(F_q) (su3) and count commuting elements."""
    F = algebra_field(algebra, q)
    tags = list(reps)
    arr = np.array([reps[t] for t in tags], dtype=np.int64).reshape(len(tags), 3, 3)
    if algebra == "sl3":
        nf, ns, cf, cs = OK.gl3_scan(q, arr, F.add_table, F.mul_table, F.neg_table)
    else:
        nf, ns, cf, cs = OK.gu3_scan(F.q, arr, F.add_table, F.mul_table, F.neg_table,
                                     F.inv_table, F.conj_table)
    return GroupScan(int(nf), int(ns), {t: int(v) for t, v in zip(tags, cf)},
                     {t: int(v) for t, v in zip(tags, cs)})


def centralizer_order(x, group: str, q: int) -> int:
    """|{g in SL3(F_q) or SU3(F_q) : g x = x g}| by enumerating the group."""
    algebra = {"SL3": "sl3", "SU3": "su3"}[group]
    return group_scan(algebra, q, {"x": x}).cent_special["x"]


# -- Cayley map ---------------------------------------------------------------------

def cayley(x, F: FqField):
    """y -> (1 - y)(1 + y)^{-1}; it is its own inverse."""
    one = identity(F)
    try:
        inv = minv(F, madd(F, one, x))
    except ZeroDivisionError:
        raise ValueError("1 + y is singular") from None
    return mmul(F, madd(F, one, mneg(F, x)), inv)


def cayley_inv(X, F: FqField):
    return cayley(X, F)


# -- Ennola -------------------------------------------------------------------------

def _commutant_basis(F, x):
    """Basis of {g in Mat_3(F) : g x = x g} by elimination over F."""
    rows = []
    for i in range(3):
        for j in range(3):
            # (g x - x g)_{ij} = sum_k g_ik x_kj - x_ik g_kj, linear in the 9 entries of g
            row = [0] * 9
            for k in range(3):
                row[3 * i + k] = F.add(row[3 * i + k], int(x[k, j]))
                row[3 * k + j] = F.sub(row[3 * k + j], int(x[i, k]))
            rows.append(row)
    # reduced row echelon form
    piv_cols, r = [], 0
    for c in range(9):
        pr = next((i for i in range(r, 9) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        iv = F.inv(rows[r][c])
        rows[r] = [F.mul(iv, v) for v in rows[r]]
        for i in range(9):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(9) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [0] * 9
        v[fc] = 1
        for row, pc in zip(rows, piv_cols):
            v[pc] = F.neg(row[fc])
        basis.append(np.array(v, dtype=np.int64).reshape(3, 3))
    return basis


def gl_centralizer_order(x, F: FqField, max_work: int = 10 ** 7) -> int:
    """|Cen_{GL3(F)}(x)|, by enumerating the commutant (closed form when it is all of Mat_3)."""
    basis = _commutant_basis(F, x)
    k = len(basis)
    if k == 9:
        return order_gl3(F.q)
    if F.q ** k > max_work:
        raise ValueError(f"commutant has {F.q ** k} elements, over budget {max_work}")
    return int(OK.count_invertible_span(np.array(basis, dtype=np.int64),
                                        F.add_table, F.mul_table, F.neg_table))


def ennola_gamma(x, q: int) -> int:
    F = FqField(q, 2)
    return int(OK.hermitian_gamma(q, np.ascontiguousarray(x, dtype=np.int64), F.add_table,
                                  F.mul_table, F.neg_table, F.conj_table))


def ennola_orbit_size(x, q: int, max_work: int = 5 ** 9) -> int:
    """gamma(x) |GU3| / |Cen_{GL3(F_{q^2})}(x)|."""
    if q ** 9 > max_work:
        raise ValueError("Hermitian form enumeration over budget")
    F = FqField(q, 2)
    gamma = ennola_gamma(x, q)
    c = gl_centralizer_order(x, F)
    size, rem = divmod(gamma * order_gu3(q), c)
    if rem:
        raise ArithmeticError("Ennola quotient is not an integer")
    return size


# -- report ---------------------------------------------------------------------------

@dataclass
class OrbitRow:
    tag: str
    regularity: str
    orbits: int
    orbit_size: int | None
    total: int
    centraliser: int | None
    expected: tuple

    def matches(self) -> bool:
        eo, es, ec = self.expected
        if self.total != eo * es or self.orbits != eo:
            return False
        if self.orbits == 0:
            return True
        return self.orbit_size == es and self.centraliser == ec


def orbit_report(algebra: str, q: int) -> list:
    cen = census(algebra, q)
    scan = group_scan(algebra, q, cen.representatives)
    table = reference_table(algebra, q)
    rows = []
    for tag in TYPES:
        size = cent = None
        if tag in cen.representatives:
            size = scan.order_full // scan.cent_full[tag]
            cent = scan.cent_special[tag]
        rows.append(OrbitRow(tag, REGULARITY[tag], cen.orbits[tag], size,
                             cen.counts[tag], cent, table[tag]))
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["type", "class", "orbits", "orbit size", "total", "centraliser order"])
    for r in rows:
        w.writerow([r.tag, r.regularity, r.orbits, "" if r.orbit_size is None else r.orbit_size,
                    r.total, "" if r.centraliser is None else r.centraliser])
    return buf.getvalue()
