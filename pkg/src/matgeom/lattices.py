"""Lattices ``L = A(Z^n)``, quotient tori, and Hopf-manifold representatives.

Complex lattices ``A(Z[i]^n)`` are stored through the realification
``C^n = R^2n`` with interleaved (re, im) coordinates.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import MatgeomError, ShapeError, SingularMatrixError
from .linalg import as_matrix, det_permutation_sum, op_norm, realify, vector_norm

__all__ = [
    "Lattice",
    "TorusPoint",
    "covolume",
    "reduce_mod",
    "is_unimodular_integer",
    "integer_det",
    "integer_inverse",
    "lattices_equal",
    "maps_lattice",
    "induced_map",
    "hopf_representative",
    "is_contraction_spectral",
]

INTEGER_TOL = 1e-9


@dataclass(frozen=True)
class Lattice:
    """The lattice generated by the columns of an invertible real `basis`."""

    basis: np.ndarray
    covolume: float = field(init=False)

    def __post_init__(self):
        B = as_matrix(self.basis)
        if np.iscomplexobj(B):
            raise ShapeError("use Lattice.gaussian for complex bases")
        if B.shape[0] != B.shape[1]:
            raise ShapeError("lattice basis must be square")
        vol = abs(float(np.linalg.det(B)))
        if vol == 0.0 or not np.isfinite(np.linalg.cond(B)):
            raise SingularMatrixError("lattice basis is singular")
        B = B.copy()
        B.setflags(write=False)
        object.__setattr__(self, "basis", B)
        object.__setattr__(self, "covolume", vol)

    @classmethod
    def integer(cls, n, scale=1.0):
        """``scale * Z^n``."""
        return cls(scale * np.eye(n))

    @classmethod
    def gaussian(cls, basis):
        """``A(Z[i]^n)`` for a complex `A`, realified to a lattice in R^2n."""
        return cls(realify(basis))

    @property
    def dim(self):
        return self.basis.shape[0]


def covolume(L):
    """Volume of ``R^n / L``, i.e. ``|det basis|``."""
    return L.covolume


@dataclass(frozen=True)
class TorusPoint:
    """Canonical representative of ``x + L`` in the half-open cell of the basis."""

    lattice: Lattice
    rep: np.ndarray
    coords: np.ndarray

    def __add__(self, other):
        if other.lattice is not self.lattice:
            raise MatgeomError("points lie on different tori")
        return reduce_mod(self.lattice, self.rep + other.rep)


def _frac(c):
    f = c - np.floor(c)
    # c slightly below an integer can round up to exactly 1.0
    f[f >= 1.0] = 0.0
    return f


def reduce_mod(L, x):
    """Reduce `x` modulo `L` into ``basis @ [0, 1)^n``.

    The representative depends on the basis; only the coset is intrinsic.
    Passing a :class:`TorusPoint` of the same lattice returns it unchanged.
    """
    if isinstance(x, TorusPoint):
        if x.lattice is L:
            return x
        x = x.rep
    x = np.asarray(x, dtype=float)
    if x.shape != (L.dim,):
        raise ShapeError(f"expected a vector of length {L.dim}")
    coords = _frac(np.linalg.solve(L.basis, x))
    return TorusPoint(L, L.basis @ coords, coords)


def _round_integer(T):
    T = as_matrix(T)
    if np.iscomplexobj(T):
        return None
    R = np.rint(T)
    if np.max(np.abs(T - R), initial=0.0) > INTEGER_TOL:
        return None
    return R.astype(np.int64).astype(object)


def integer_det(M):
    """Exact determinant of an integer (object) matrix.

    Permutation expansion for n <= 5, Bareiss fraction-free elimination
    above that.
    """
    M = np.asarray(M, dtype=object)
    n = M.shape[0]
    if n <= 5:
        return int(det_permutation_sum(M))
    a = [[int(v) for v in row] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def integer_inverse(M):
    """Exact inverse of an integer matrix if it is again integral, else None."""
    M = np.asarray(M, dtype=object)
    n = M.shape[0]
    aug = [[Fraction(int(v)) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    for k in range(n):
        pivot = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if pivot is None:
            return None
        aug[k], aug[pivot] = aug[pivot], aug[k]
        p = aug[k][k]
        aug[k] = [v / p for v in aug[k]]
        for r in range(n):
            if r != k and aug[r][k] != 0:
                f = aug[r][k]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[k])]
    inv = [row[n:] for row in aug]
    if any(v.denominator != 1 for row in inv for v in row):
        return None
    return np.array([[int(v) for v in row] for row in inv], dtype=object)


def is_unimodular_integer(T):
    """True when `T` is an integer matrix of determinant exactly 1.

    Entries must lie within 1e-9 of integers; everything after rounding is
    exact integer arithmetic. The inverse is confirmed integral as well.
    """
    T = np.asarray(T)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        return False
    M = _round_integer(T)
    if M is None or integer_det(M) != 1:
        return False
    return integer_inverse(M) is not None


def lattices_equal(L1, L2):
    """Whether two bases generate the same lattice (change of basis in GL(n, Z))."""
    if L1.dim != L2.dim:
        raise ShapeError("lattices of different dimension")
    M = _round_integer(np.linalg.solve(L2.basis, L1.basis))
    return M is not None and abs(integer_det(M)) == 1


def maps_lattice(A, L1, L2):
    """Whether ``A(L1) = L2``."""
    return lattices_equal(Lattice(as_matrix(A) @ L1.basis), L2)


def induced_map(A, L1, L2, point):
    """The torus map ``R^n/L1 -> R^n/L2`` induced by `A` with ``A(L1) = L2``."""
    if not maps_lattice(A, L1, L2):
        raise MatgeomError("A does not map L1 onto L2")
    point = reduce_mod(L1, point)
    return reduce_mod(L2, as_matrix(A) @ point.rep)


def is_contraction_spectral(A):
    """Whether ``A^l v -> 0`` for every v, i.e. all eigenvalues lie in the open unit disc.

    Uses LAPACK eigenvalues: a root-finder on the characteristic polynomial
    can land a hair inside the circle for an eigenvalue of modulus exactly 1.
    """
    return bool(np.max(np.abs(np.linalg.eigvals(as_matrix(A))), initial=0.0) < 1.0)


def hopf_representative(A, v, max_steps=100_000):
    """Canonical element of the orbit ``{A^j v : j in Z}`` in the Hopf manifold.

    Requires ``||A||_op < 1``, so orbit norms decrease strictly and exactly
    one element `w` has ``|w| >= 1 > |A w|``. Returns ``(w, j)`` with
    ``w = A^j v``.
    """
    A = as_matrix(A)
    v = np.asarray(v)
    if op_norm(A) >= 1.0:
        raise MatgeomError("hopf_representative needs ||A||_op < 1")
    if vector_norm(v) == 0.0:
        raise MatgeomError("v must be nonzero")
    w, j = v, 0
    if vector_norm(w) < 1.0:
        while vector_norm(w) < 1.0:
            w = np.linalg.solve(A, w)
            j -= 1
            if -j > max_steps:
                raise MatgeomError("orbit did not reach the unit sphere")
        return w, j
    while True:
        nxt = A @ w
        if vector_norm(nxt) < 1.0:
            return w, j
        w, j = nxt, j + 1
        if j > max_steps:
            raise MatgeomError("orbit did not reach the unit sphere")
