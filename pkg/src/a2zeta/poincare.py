"""Profile censuses N_{n,a}, zeta coefficients and the radical-index check."""

import json
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _profile_kernels as K
from .eldiv import antisym_profile, kernel_size
from .lattice import LieLattice, commutator_matrix

DEFAULT_BUDGET = 2 ** 32
BUDGET_ENV = "A2ZETA_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


def budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


@dataclass
class ProfileCensus:
    lattice: str
    p: int
    d: int
    levels: dict  # n -> {profile tuple: count}
    exact: bool = True
    samples: int | None = None
    seed: int | None = None
    wall_time: float = 0.0

    @property
    def n_max(self) -> int:
        return max(self.levels) if self.levels else 0

    def total(self, n: int) -> int:
        return sum(self.levels[n].values())

    def to_json(self, extra=None) -> dict:
        meta = {"wall_time": self.wall_time}
        if self.seed is not None:
            meta["seed"] = self.seed
        if self.samples is not None:
            meta["samples"] = self.samples
        obj = {
            "lattice": self.lattice,
            "p": self.p,
            "d": self.d,
            "exact": self.exact,
            "levels": [
                {"n": n, "profiles": [{"a": list(a), "count": c}
                                      for a, c in sorted(self.levels[n].items())]}
                for n in sorted(self.levels)
            ],
            "meta": meta,
        }
        if extra:
            obj.update(extra)
        return obj

    @classmethod
    def from_json(cls, obj) -> "ProfileCensus":
        if isinstance(obj, str):
            obj = json.loads(obj)
        levels = {lv["n"]: {tuple(pr["a"]): pr["count"] for pr in lv["profiles"]}
                  for lv in obj["levels"]}
        meta = obj.get("meta", {})
        return cls(obj["lattice"], obj["p"], obj.get("d", 8), levels, obj["exact"],
                   meta.get("samples"), meta.get("seed"), meta.get("wall_time", 0.0))


def required_work(p: int, d: int, n_max: int) -> int:
    return sum(p ** (d * n) for n in range(1, n_max + 1))


def enumerate_counts(L: LieLattice, p: int, n_max: int, workers: int | None = None,
                     budget_limit: int | None = None) -> ProfileCensus:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    limit = budget() if budget_limit is None else budget_limit
    work = required_work(p, L.d, n_max)
    if work > limit:
        raise BudgetExceeded(
            f"census needs {work} profile computations, budget is {limit} "
            f"(raise it with {BUDGET_ENV})")
    if workers:
        import numba
        numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))
    sc = K.sparse_constants(L.lam)
    half = L.d // 2
    start = time.perf_counter()
    levels = {}
    for n in range(1, n_max + 1):
        tally = K.enumerate_level(*sc, L.d, p, n, (n + 1) ** half)
        levels[n] = {K.decode(c, n, half): int(v) for c, v in enumerate(tally) if v}
    return ProfileCensus(L.name, p, L.d, levels, True,
                         wall_time=time.perf_counter() - start)


def montecarlo_profiles(L: LieLattice, p: int, n: int, samples: int, seed: int,
                        batch: int = 200_000) -> ProfileCensus:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    sc = K.sparse_constants(L.lam)
    mod = p ** n
    half = L.d // 2
    counts = np.zeros((n + 1) ** half, dtype=np.int64)
    start = time.perf_counter()
    done = 0
    while done < samples:
        Y = rng.integers(0, mod, size=(min(batch, samples - done) * 2, L.d), dtype=np.int64)
        Y = Y[(Y % p != 0).any(axis=1)][: samples - done]
        codes = K.profile_codes_for(*sc, L.d, p, n, Y)
        counts += np.bincount(codes, minlength=counts.size)
        done += len(Y)
    levels = {n: {K.decode(c, n, half): int(v) for c, v in enumerate(counts) if v}}
    return ProfileCensus(L.name, p, L.d, levels, False, samples, seed,
                         time.perf_counter() - start)


def frequencies(census: ProfileCensus, n: int) -> dict:
    """Profile -> (frequency, standard error) for a sampled level."""
    total = census.total(n)
    out = {}
    for a, c in census.levels[n].items():
        f = c / total
        out[a] = (f, (f * (1 - f) / total) ** 0.5)
    return out


def t_degree(a, n: int) -> int:
    return sum(n - x for x in a)


def poincare_terms(census: ProfileCensus):
    """Yield (n, a, count, k) with k the t-degree of the term."""
    for n, prof in census.levels.items():
        for a, c in prof.items():
            yield n, a, c, t_degree(a, n)


def zeta_coeffs(census: ProfileCensus, m: int, k_max: int) -> list:
    """[(k, r_k)] with r_k the number of characters of degree q^k of G^m."""
    if not census.exact:
        raise ValueError("zeta coefficients need an exact census")
    complete = all(n in census.levels for n in range(1, census.n_max + 1))
    if not complete or 2 * census.n_max + 1 < k_max:
        raise ValueError(
            f"census through level {census.n_max} only determines k <= {2 * census.n_max + 1}")
    q, d = census.p, census.d
    acc = [Fraction(0)] * (k_max + 1)
    acc[0] = Fraction(1)
    for n, a, c, k in poincare_terms(census):
        if k <= k_max:
            acc[k] += Fraction(c, q ** (2 * k))
    out = []
    for k, v in enumerate(acc):
        r = v * q ** (d * m)
        if r.denominator != 1 or r < 0:
            raise ArithmeticError(f"r_{k} = {r} is not a nonnegative integer")
        out.append((k, int(r)))
    return out


def project(census: ProfileCensus, n_from: int, n_to: int) -> dict:
    """Truncate level-n_from profiles at n_to and divide counts by q^{d (n_from - n_to)}."""
    q, d = census.p, census.d
    out = {}
    for a, c in census.levels[n_from].items():
        b = tuple(min(x, n_to) for x in a)
        out[b] = out.get(b, 0) + c
    scale = q ** (d * (n_from - n_to))
    return {b: Fraction(c, scale) for b, c in out.items()}


def radical_index(L: LieLattice, w, p: int, n: int) -> int:
    """q^{dn} / |{z : z R(w) = 0 mod p^n}|, solved directly."""
    w = np.asarray(w, dtype=np.int64) % p ** n
    if not (w % p).any():
        raise ValueError("w is not primitive")
    M = commutator_matrix(L).evaluate(w, p ** n)
    return p ** (L.d * n) // kernel_size(M, p, n)


def radical_index_formula(L: LieLattice, w, p: int, n: int) -> int:
    M = commutator_matrix(L).evaluate(w, p ** n)
    a = antisym_profile(M, p, n)
    return p ** (2 * sum(n - min(x, n) for x in a))


def implied_level_counts(variant: str, p: int, n: int) -> dict:
    """Profile counts at level n in {1, 2} read off the closed form.

    Level-n profiles of the A2 lattices are (0, 0, b, n) with t-degree 3n - b;
    the degrees 2, 3 (level 1) and 4, 5 (level 2) occur at no other level, so
    their series coefficients fix those counts, and the remaining level-2
    profile takes the rest of the q^{8n} - q^{8(n-1)} primitive classes.
    """
    from .ratfun import poincare_closed, series_in_t

    if n not in (1, 2):
        raise ValueError("the closed form separates profiles only at levels 1 and 2")
    c = series_in_t(poincare_closed(variant), p, 5)
    count = lambda k: c[k] * p ** (2 * k)
    if n == 1:
        out = {(0, 0, 1, 1): count(2), (0, 0, 0, 1): count(3)}
    else:
        out = {(0, 0, 2, 2): count(4), (0, 0, 1, 2): count(5)}
        out[(0, 0, 0, 2)] = p ** 16 - p ** 8 - sum(out.values())
    for a, v in out.items():
        if v.denominator != 1 or v < 0:
            raise ArithmeticError(f"implied count {v} for {a} is not a nonnegative integer")
    return {a: int(v) for a, v in out.items()}


def implied_probabilities(variant: str, p: int, n: int) -> dict:
    counts = implied_level_counts(variant, p, n)
    total = sum(counts.values())
    return {a: Fraction(v, total) for a, v in counts.items()}
