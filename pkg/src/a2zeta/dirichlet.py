"""Dirichlet series with nonnegative coefficients, the partial-sum
domination order, Euler products over primes, and the per-type bounding
summands for the local factors of SL3 and SU3 arithmetic groups.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import primerange

ABSCISSA_TOLERANCE = 0.15


@dataclass
class DirichletSeries:
    coeffs: dict = field(default_factory=dict)  # degree -> coefficient
    cap: int = 10 ** 6

    def __post_init__(self):
        clean = {}
        for n, a in self.coeffs.items():
            if n < 1:
                raise ValueError("degrees start at 1")
            if a < 0:
                raise ValueError("coefficients must be nonnegative")
            if a and n <= self.cap:
                clean[int(n)] = clean.get(int(n), 0) + a
        self.coeffs = clean

    def partial_sums(self, degrees):
        items = sorted(self.coeffs.items())
        keys = [n for n, _ in items]
        cums, acc = [], 0
        for _, a in items:
            acc += a
            cums.append(acc)
        out = []
        for N in degrees:
            i = bisect_right(keys, N)
            out.append(cums[i - 1] if i else 0)
        return out

    def total(self):
        return sum(self.coeffs.values())

    def evaluate(self, s: float) -> float:
        return sum(float(a) * n ** -s for n, a in self.coeffs.items())

    def __eq__(self, other):
        return isinstance(other, DirichletSeries) and self.cap == other.cap \
            and self.coeffs == other.coeffs


def dominates(xi: DirichletSeries, eta: DirichletSeries) -> bool:
    """True iff every partial sum of xi is at most the matching one of eta (xi << eta)."""
    if xi.cap != eta.cap:
        raise ValueError("series have different caps")
    pts = sorted(set(xi.coeffs) | set(eta.coeffs))
    return all(a <= b for a, b in zip(xi.partial_sums(pts), eta.partial_sums(pts)))


def product(xi: DirichletSeries, eta: DirichletSeries, cap: int | None = None) -> DirichletSeries:
    """Dirichlet convolution truncated at the cap."""
    D = cap if cap is not None else min(xi.cap, eta.cap)
    out = {}
    eta_items = sorted(eta.coeffs.items())
    for n, a in xi.coeffs.items():
        lim = D // n
        for m, b in eta_items:
            if m > lim:
                break
            out[n * m] = out.get(n * m, 0) + a * b
    return DirichletSeries(out, D)


# -- bounding summands ------------------------------------------------------------

@dataclass(frozen=True)
class PsiFormula:
    """2^(c0 + c1 s) * sum_k coef_k q^(a_k - b_k s) * prod_j (1 - q^(a_j - b_j s))^-1."""
    two_power: tuple
    monomials: tuple      # (coef, a, b)
    geometric: tuple      # (a, b)
    threshold: Fraction

    def derived_threshold(self) -> Fraction:
        # sum over primes of q^(a - b s) converges iff a - b s < -1; each
        # geometric factor needs a - b s < 0
        cands = [Fraction(a + 1, b) for _, a, b in self.monomials]
        cands += [Fraction(a, b) for a, b in self.geometric]
        return max(cands)

    def pole_bound(self) -> Fraction:
        return max((Fraction(a, b) for a, b in self.geometric), default=Fraction(-10 ** 9))


_G = ((2, 3),)
_G12 = ((1, 2), (2, 3))
F = Fraction

_INNER = {
    "4a": PsiFormula((1, 1), ((1, 4, 6),), _G, F(5, 6)),
    "5": PsiFormula((1, 1), ((1, 3, 6),), _G, F(2, 3)),
    "2a": PsiFormula((2, 1), ((10, 1, 4), (10, 5, 6), (1, 2, 5), (1, 6, 7)), _G12, F(1)),
    "2b": PsiFormula((2, 1), ((1, 2, 5), (1, 6, 7)), _G12, F(1)),
    "2c": PsiFormula((2, 1), ((1, 2, 5), (1, 6, 7)), _G12, F(1)),
    "1a": PsiFormula((5, 3), ((1, 2, 6),), _G, F(2, 3)),
    "1b": PsiFormula((5, 3), ((1, 0, 7),), _G, F(2, 3)),
    "3b": PsiFormula((7, 4), ((1, 1, 6), (1, 5, 8)), _G12, F(3, 4)),
}
_OUTER = {
    "4a": PsiFormula((3, 2), ((1, 4, 6),), _G, F(5, 6)),
    "5": PsiFormula((3, 2), ((1, 3, 6),), _G, F(2, 3)),
    "2a": PsiFormula((3, 2), ((10, 1, 4), (10, 5, 6), (1, 2, 5), (1, 6, 7)), _G12, F(1)),
    "2b": PsiFormula((3, 2), ((1, 2, 5), (1, 6, 7)), _G12, F(1)),
    "2c": PsiFormula((3, 2), ((1, 2, 5), (1, 6, 7)), _G12, F(1)),
    "1a": PsiFormula((3, 1), ((1, 2, 6),), _G, F(2, 3)),
    "1b": PsiFormula((3, 1), ((1, 0, 7),), _G, F(2, 3)),
    "3b": PsiFormula((9, 5), ((1, 1, 6), (1, 5, 8)), _G12, F(3, 4)),
}
# types 4b and 4c are bounded like 4a
for _t in (_INNER, _OUTER):
    _t["4b"] = _t["4c"] = _t["4a"]

TAGS = ("1a", "1b", "2a", "2b", "2c", "3a", "3b", "4a", "4b", "4c", "5")
THRESHOLDS = {tag: (_INNER[tag].threshold if tag != "3a" else F(4, 5)) for tag in TAGS}


def _psi3a(variant, q, s, exact):
    # (q^(2-4s) + c 2^(e s) q^(3-5s)) (1 - q^(1-2s))^-1, with c 2^(e s) = 2^s (inner)
    # or 2^(1+s) (outer)
    two = 2 ** (s + (1 if variant == "outer" else 0))
    num = _qpow(q, 2 - 4 * s, exact) + two * _qpow(q, 3 - 5 * s, exact)
    return num / (1 - _qpow(q, 1 - 2 * s, exact))


def _qpow(q, e, exact):
    if exact:
        return Fraction(q) ** int(e)
    return float(q) ** e


def formula(tag: str, variant: str) -> PsiFormula | None:
    if tag not in TAGS:
        raise ValueError(f"unknown tag {tag!r}")
    if variant not in ("inner", "outer"):
        raise ValueError("variant is inner or outer")
    return None if tag == "3a" else (_INNER if variant == "inner" else _OUTER)[tag]


def pole_bound(tag: str) -> Fraction:
    return F(1, 2) if tag == "3a" else _INNER[tag].pole_bound()


def psi_eval(tag: str, variant: str, q, s):
    """Value of the bounding summand at (q, s); exact Fraction when s is an integer
    or Fraction with integral exponents, float otherwise.  Inside the pole region
    the value is +inf."""
    f = formula(tag, variant)
    exact = isinstance(s, (int, Fraction)) and all(
        float(e).is_integer() for e in _exponents(f, tag, s))
    if s <= pole_bound(tag):
        raise ValueError(f"s = {s} lies in the pole region s <= {pole_bound(tag)}")
    if tag == "3a":
        return _psi3a(variant, q, s, exact)
    c0, c1 = f.two_power
    if exact:
        val = Fraction(2) ** int(c0 + c1 * s)
    else:
        val = 2.0 ** (c0 + c1 * float(s))
    total = sum(c * _qpow(q, a - b * s, exact) for c, a, b in f.monomials)
    for a, b in f.geometric:
        total = total / (1 - _qpow(q, a - b * s, exact))
    return val * total


def _exponents(f, tag, s):
    if f is None:
        return [s, 2 - 4 * s, 3 - 5 * s, 1 - 2 * s]
    return [f.two_power[0] + f.two_power[1] * s] + \
        [a - b * s for _, a, b in f.monomials] + [a - b * s for a, b in f.geometric]


def _psi_vector(tag, variant, qs, s):
    """Vectorised float evaluation over an array of primes; inf in the pole region."""
    qs = np.asarray(qs, dtype=float)
    if s <= pole_bound(tag):
        return np.full(qs.shape, np.inf)
    f = formula(tag, variant)
    if f is None:
        two = 2.0 ** (s + (1 if variant == "outer" else 0))
        return (qs ** (2 - 4 * s) + two * qs ** (3 - 5 * s)) / (1 - qs ** (1 - 2 * s))
    val = sum(c * qs ** (a - b * s) for c, a, b in f.monomials)
    for a, b in f.geometric:
        val = val / (1 - qs ** (a - b * s))
    return 2.0 ** (f.two_power[0] + f.two_power[1] * s) * val


@dataclass
class PrimeSumReport:
    tag: str
    variant: str
    s: float
    prime_bound: int
    partial_sum: float
    increment: float          # sum over primes in (bound/10, bound]
    indicator: float          # increment / partial sum
    expected_divergent: bool
    pole_region: bool

    def to_json(self):
        return {k: (v if not isinstance(v, float) or math.isfinite(v) else str(v))
                for k, v in self.__dict__.items()}


def psi_sum_over_primes(tag: str, variant: str, s: float, prime_bound: int) -> PrimeSumReport:
    """Partial sum over primes q <= bound with a Cauchy indicator: the share of
    the partial sum contributed by the last decade of primes."""
    qs = np.fromiter(primerange(2, prime_bound + 1), dtype=float)
    pole = s <= pole_bound(tag)
    divergent = s <= THRESHOLDS[tag]
    if qs.size == 0:
        return PrimeSumReport(tag, variant, s, prime_bound, 0.0, 0.0, 0.0, divergent, pole)
    vals = _psi_vector(tag, variant, qs, s)
    total = float(vals.sum())
    inc = float(vals[qs > prime_bound / 10].sum())
    if math.isinf(total):
        ind = math.inf
    else:
        ind = inc / total if total else 0.0
    return PrimeSumReport(tag, variant, s, prime_bound, total, inc, ind, divergent, pole)


# -- exact local contributions for regular types -------------------------------------

def exact_regular_contribution(tag: str, variant: str, q: int, s: float) -> float:
    """Exact contribution of the regular type `tag` at level one: each of the
    elements of that type carries an abelian inertia quotient of order |C| and
    index |G:N| / |C|, times the series factor (1 - q^(2-3s))^-1."""
    from .orbitclass import reference_table
    if tag not in ("4a", "4b", "4c", "5"):
        raise ValueError("exact contributions only for types 4a, 4b, 4c, 5")
    algebra = "sl3" if variant == "inner" else "su3"
    orbits, size, cent = reference_table(algebra, q)["T" + tag]
    total = orbits * size
    order = q ** 3 * (q ** 2 - 1) * (q ** 3 - 1 if algebra == "sl3" else q ** 3 + 1)
    return total * cent * (order / cent) ** (-1 - s) / (1 - q ** (2 - 3 * s))


# -- Euler products ----------------------------------------------------------------

def _fold(keys, vals, local, cap):
    """Multiply the sparse series (keys, vals) by a finite local factor."""
    parts_k, parts_v = [], []
    for d, m in sorted(local.items()):
        cut = np.searchsorted(keys, cap // d, side="right")
        if cut == 0:
            break
        parts_k.append(keys[:cut] * d)
        parts_v.append(vals[:cut] * m)
    k = np.concatenate(parts_k)
    v = np.concatenate(parts_v)
    order = np.argsort(k, kind="stable")
    k, v = k[order], v[order]
    starts = np.flatnonzero(np.r_[True, k[1:] != k[:-1]])
    return k[starts], np.add.reduceat(v, starts)


@dataclass
class AbscissaEstimate:
    grid: list
    slopes: list
    last: float
    extrapolated: float
    n_primes: int
    terms: int

    def to_json(self):
        return dict(self.__dict__)


def euler_product(local_factory, prime_bound: int, cap: int, skip=lambda p: False):
    """Sparse coefficient arrays of prod_{p <= bound} local(p), truncated at cap."""
    if cap >= 2 ** 62:
        raise ValueError("cap too large for 64-bit degrees")
    keys = np.array([1], dtype=np.int64)
    vals = np.array([1], dtype=np.int64)
    used = 0
    for p in primerange(2, prime_bound + 1):
        if skip(p):
            continue
        local = local_factory(p)
        keys, vals = _fold(keys, vals, local, cap)
        used += 1
    return keys, vals, used


def euler_product_abscissa(local_factory, prime_bound: int, cap: int, grid=None,
                           skip=lambda p: False) -> AbscissaEstimate:
    """Slopes log(sum_{n <= N} a_n) / log N of the truncated Euler product on a
    grid of N, plus a linear extrapolation of the slopes in 1/log N."""
    keys, vals, used = euler_product(local_factory, prime_bound, cap, skip)
    if grid is None:
        top = int(math.log10(cap))
        grid = [10 ** e for e in range(max(1, top - 4), top + 1)]
    cums = np.cumsum(vals)
    slopes = []
    for N in grid:
        i = np.searchsorted(keys, N, side="right") - 1
        slopes.append(math.log(int(cums[i])) / math.log(N))
    if len(grid) >= 2:
        x = np.array([1 / math.log(N) for N in grid])
        b, a = np.polyfit(x, np.array(slopes), 1)
        extra = float(a)
    else:
        extra = slopes[-1]
    return AbscissaEstimate(list(grid), slopes, slopes[-1], extra, used, int(keys.size))


def finite_group_factory(family: str):
    """Local factor p -> degree multiset of SL3(F_p) or SU3(F_p)."""
    from .finitezeta import zeta_sl3_fq, zeta_su3_fq
    fn = {"sl3": zeta_sl3_fq, "su3": zeta_su3_fq}[family]
    return lambda p: fn(p).degrees


def skip_char3(p):
    return p == 3
