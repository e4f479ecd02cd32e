"""Lie lattices given by integer structure constants, and the A2 instances.

Structure constants are stored as an integer array ``lam`` with
``[b_i, b_j] = sum_h lam[i, j, h] b_h``.

The su3 lattice lives inside Mat_3(Z[theta]) with theta^2 + c1 theta + c0 = 0.
For odd p, theta = sqrt(delta) with delta the least non-residue mod p; for
p = 2, theta = omega is a primitive cube root of unity.  Basis order:
three skew matrices E_ij - E_ji (ij = 12, 13, 23), then five elements
built from symmetric matrices:

    p odd:  theta (E_ij + E_ji), theta (E11 - E22), theta (E22 - E33)
    p = 2:  (1 + omega) E_ij + omega E_ji, (1 + 2 omega)(E11 - E22),
            (1 + 2 omega)(E22 - E33)
"""

import json
from fractions import Fraction

import numpy as np
import sympy

from .modring import is_prime, least_nonresidue


SL3_NAMES = ("h12", "h23", "e12", "e23", "e13", "f21", "f23", "f13")
SU3_NAMES = ("k12", "k13", "k23", "s12", "s13", "s23", "d12", "d23")


def _unit(i, j):
    m = np.zeros((3, 3), dtype=np.int64)
    m[i, j] = 1
    return m


class LieLattice:
    def __init__(self, name, lam, names=None, basis=None, ring=(0, 0)):
        lam = np.asarray(lam, dtype=np.int64)
        d = lam.shape[0]
        if lam.shape != (d, d, d):
            raise ValueError("structure constants must have shape (d, d, d)")
        if not np.array_equal(lam, -lam.transpose(1, 0, 2)):
            raise ValueError("structure constants are not antisymmetric")
        self.name = name
        self.d = d
        self.lam = lam
        self.lam.setflags(write=False)
        self.names = tuple(names) if names else tuple(f"b{i}" for i in range(d))
        # matrix realization: list of (A, B) meaning A + theta B, theta^2 = -c1 theta - c0
        self.basis = basis
        self.ring = ring

    def __repr__(self):
        return f"LieLattice({self.name!r}, d={self.d})"

    def index(self, name: str) -> int:
        return self.names.index(name)

    def bracket(self, x, y):
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        return np.einsum("i,j,ijh->h", x, y, self.lam.astype(object))

    def jacobi_holds(self) -> bool:
        lam = self.lam.astype(object)
        # [[b_i, b_j], b_k] + cyclic = 0 as a tensor identity
        t = np.einsum("ijm,mkh->ijkh", lam, lam)
        total = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
        return not total.any()

    def bracket_span_matrix(self) -> np.ndarray:
        """d x d^2 integer matrix whose columns are the brackets [b_i, b_j]."""
        return self.lam.reshape(self.d * self.d, self.d).T.copy()

    def is_perfect(self) -> bool:
        return sympy.Matrix(self.bracket_span_matrix().tolist()).rank() == self.d

    def to_json(self) -> str:
        triples = [
            [i, j, h, int(self.lam[i, j, h])]
            for i in range(self.d) for j in range(self.d) for h in range(self.d)
            if self.lam[i, j, h]
        ]
        return json.dumps({"name": self.name, "d": self.d, "names": list(self.names),
                           "structure_constants": triples})

    @classmethod
    def from_json(cls, text: str) -> "LieLattice":
        obj = json.loads(text)
        d = obj["d"]
        lam = np.zeros((d, d, d), dtype=np.int64)
        for i, j, h, c in obj["structure_constants"]:
            lam[i, j, h] = c
        return cls(obj["name"], lam, obj.get("names"))


class CommutatorMatrix:
    """d x d matrix of integer linear forms; entry (i, j) = sum_h lam[i, j, h] Y_h."""

    def __init__(self, lattice: LieLattice):
        self.lattice = lattice
        self.forms = lattice.lam

    @property
    def d(self):
        return self.lattice.d

    def evaluate(self, y, modulus=None) -> np.ndarray:
        y = np.asarray(y, dtype=np.int64)
        if y.shape != (self.d,):
            raise ValueError(f"expected a vector of length {self.d}, got shape {y.shape}")
        m = self.forms @ y
        if modulus is not None:
            m %= modulus
        return m


def commutator_matrix(lattice: LieLattice) -> CommutatorMatrix:
    return CommutatorMatrix(lattice)


def evaluate(R: CommutatorMatrix, y, modulus=None) -> np.ndarray:
    return R.evaluate(y, modulus)


# -- matrices over Z[theta] ---------------------------------------------------

def _omul(x, y, ring):
    c0, c1 = ring
    (a, b), (c, d) = x, y
    bd = b @ d
    return (a @ c - c0 * bd, a @ d + b @ c - c1 * bd)


def _obracket(x, y, ring):
    p1, p2 = _omul(x, y, ring), _omul(y, x, ring)
    return (p1[0] - p2[0], p1[1] - p2[1])


def _structure_constants(basis, ring):
    vecs = np.array([np.concatenate([a.ravel(), b.ravel()]) for a, b in basis]).T
    M = sympy.Matrix(vecs.tolist())
    pivots = M.T.rref()[1]
    if len(pivots) != len(basis):
        raise ValueError("basis matrices are linearly dependent")
    inv = M.extract(list(pivots), list(range(len(basis)))).inv()
    d = len(basis)
    lam = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            a, b = _obracket(basis[i], basis[j], ring)
            v = np.concatenate([a.ravel(), b.ravel()])
            coords = inv * sympy.Matrix([int(v[r]) for r in pivots])
            if any(c.q != 1 for c in coords):
                raise ArithmeticError("bracket leaves the integral span")
            coords = np.array([int(c) for c in coords], dtype=np.int64)
            if not np.array_equal(vecs @ coords, v):
                raise ArithmeticError("bracket leaves the span of the basis")
            lam[i, j] = coords
    return lam


def sl3_basis():
    zero = np.zeros((3, 3), dtype=np.int64)
    mats = [
        _unit(0, 0) - _unit(1, 1),
        _unit(1, 1) - _unit(2, 2),
        _unit(0, 1), _unit(1, 2), _unit(0, 2),
        _unit(1, 0), _unit(2, 1), _unit(2, 0),
    ]
    return [(m, zero) for m in mats]


def make_sl3() -> LieLattice:
    basis = sl3_basis()
    return LieLattice("sl3", _structure_constants(basis, (0, 0)), SL3_NAMES, basis, (0, 0))


def su3_ring(p: int):
    """(c0, c1) with theta^2 + c1 theta + c0 = 0 for the su3 lattice at p."""
    if p == 2:
        return (1, 1)
    return (-least_nonresidue(p), 0)


def su3_basis(p: int):
    zero = np.zeros((3, 3), dtype=np.int64)
    pairs = [(0, 1), (0, 2), (1, 2)]
    skew = [(_unit(i, j) - _unit(j, i), zero) for i, j in pairs]
    diag = [_unit(0, 0) - _unit(1, 1), _unit(1, 1) - _unit(2, 2)]
    if p == 2:
        rest = [(_unit(i, j), _unit(i, j) + _unit(j, i)) for i, j in pairs]
        rest += [(m, 2 * m) for m in diag]
    else:
        rest = [(zero, _unit(i, j) + _unit(j, i)) for i, j in pairs]
        rest += [(zero, m) for m in diag]
    return skew + rest


def make_su3(p: int) -> LieLattice:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 3:
        raise ValueError("p = 3 unsupported for su3")
    ring = su3_ring(p)
    basis = su3_basis(p)
    return LieLattice(f"su3(p={p})", _structure_constants(basis, ring), SU3_NAMES, basis, ring)


def make_lattice(name: str, p: int) -> LieLattice:
    if name == "sl3":
        return make_sl3()
    if name == "su3":
        return make_su3(p)
    raise ValueError(f"unknown algebra {name!r}")


# -- normalized Killing form on sl3 -------------------------------------------

KILLING_SL3 = np.zeros((8, 8), dtype=np.int64)
KILLING_SL3[:2, :2] = [[2, -1], [-1, 2]]
for _i, _j in ((2, 5), (3, 6), (4, 7)):
    KILLING_SL3[_i, _j] = KILLING_SL3[_j, _i] = 1


def normalized_killing(lattice: LieLattice, x, y) -> Fraction:
    if lattice.name != "sl3":
        raise ValueError("the normalized Killing matrix is only tabulated for sl3")
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    return Fraction(x @ KILLING_SL3.astype(object) @ y)


def permissible(e: int, p: int, m: int) -> bool:
    """Sufficient criterion for the level m to be permissible."""
    if e < 1 or m < 0:
        raise ValueError("need e >= 1 and m >= 0")
    if not m > Fraction(e, p - 1):
        return False
    if p > 2:
        return m >= Fraction(e, p - 2)
    return m >= 2 * e
