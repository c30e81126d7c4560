"""Projective spaces, Grassmannians and maps between them.

Projective points carry a normalised representative (unit length, first
component of largest modulus real and positive), so two points are equal
when their representatives agree. Subspaces are compared through their
orthogonal projectors, which removes the choice of basis altogether.

Chart indices are 0-based.
"""
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    MatgeomError,
    NotInChartError,
    ResultantZeroError,
    ShapeError,
    SingularMatrixError,
)
from .linalg import as_matrix, gram_schmidt, hs_norm, realify, vector_norm

__all__ = [
    "ProjPoint",
    "proj_from",
    "proj_distance",
    "affine_chart",
    "chart_extract",
    "apply_projective",
    "projective_map_between",
    "GrassPoint",
    "grass_from",
    "grass_distance",
    "graph_chart",
    "graph_coordinates",
    "annihilator",
    "transform_grass",
    "HomogeneousMapP1",
    "sylvester_resultant",
    "common_zero_gap",
    "homogeneous_map_p1",
    "compose",
    "normalize_real_linear_c1",
    "real_linear_matrix",
    "majorization_holds",
]

ZERO_TOL = 1e-12
COMMON_ZERO_TOL = 1e-10
PIVOT_TIE = 1e-9


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """A line through the origin, stored by its normalised representative."""

    rep: np.ndarray

    @property
    def dim(self):
        """Projective dimension n (the representative has n + 1 entries)."""
        return self.rep.shape[0] - 1


def proj_from(v):
    """The point of projective space through the nonzero vector `v`."""
    v = np.asarray(v)
    if v.ndim != 1:
        raise ShapeError("expected a vector")
    if not np.iscomplexobj(v):
        v = v.astype(float)
    nv = vector_norm(v)
    if nv == 0.0 or not np.isfinite(nv):
        raise MatgeomError("the zero vector does not define a projective point")
    mod = np.abs(v)
    # near-ties resolved towards the first index so rescaling cannot flip the pivot
    pivot = int(np.argmax(mod >= (1 - PIVOT_TIE) * mod.max()))
    phase = np.conj(v[pivot]) / mod[pivot]
    rep = v * (phase / nv)
    if np.iscomplexobj(rep):
        rep[pivot] = rep[pivot].real
    rep.setflags(write=False)
    return ProjPoint(rep)


def proj_distance(P, Q):
    """Sine of the angle between the two lines (0 iff equal)."""
    # the rejection of Q from P; sqrt(1 - c^2) loses half the digits near 0
    r = Q.rep - P.rep * np.vdot(P.rep, Q.rep)
    return float(min(1.0, vector_norm(r)))


def affine_chart(j, x):
    """Point through the vector obtained by inserting 1 at slot `j` of `x`."""
    x = np.asarray(x)
    return proj_from(np.insert(x.astype(np.result_type(x, float)), j, 1.0))


def chart_extract(j, P):
    """Inverse of :func:`affine_chart`: scale slot `j` to 1 and drop it."""
    rj = P.rep[j]
    if abs(rj) <= ZERO_TOL:
        raise NotInChartError(f"point lies outside affine chart {j}")
    return np.delete(P.rep / rj, j)


def _check_invertible(A, max_cond=1e12):
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError("expected a square matrix")
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > max_cond:
        raise SingularMatrixError("projective maps need an invertible matrix")
    return A


def apply_projective(A, P):
    """The projective transformation induced by an invertible `A`."""
    A = _check_invertible(A)
    if A.shape[0] != P.rep.shape[0]:
        raise ShapeError("matrix and point dimensions differ")
    return proj_from(A @ P.rep)


def _completed_basis(p):
    n = p.shape[0]
    eye = np.eye(n, dtype=p.dtype)
    return gram_schmidt([p] + list(eye)).T


def projective_map_between(P, Q):
    """A unitary `A` with ``apply_projective(A, P) == Q``."""
    if P.rep.shape != Q.rep.shape:
        raise ShapeError("points live in different projective spaces")
    dtype = np.result_type(P.rep, Q.rep)
    Up = _completed_basis(P.rep.astype(dtype))
    Uq = _completed_basis(Q.rep.astype(dtype))
    return Uq @ Up.conj().T


@dataclass(frozen=True, eq=False)
class GrassPoint:
    """A k-dimensional subspace, as n x k orthonormal columns plus its projector."""

    basis: np.ndarray
    projector: np.ndarray = field(init=False)

    def __post_init__(self):
        B = np.asarray(self.basis)
        if B.ndim != 2:
            raise ShapeError("basis must be an n x k matrix")
        if B.shape[1] and np.max(np.abs(B.conj().T @ B - np.eye(B.shape[1]))) > 1e-10:
            raise MatgeomError("basis columns are not orthonormal")
        object.__setattr__(self, "projector", B @ B.conj().T)

    @property
    def k(self):
        return self.basis.shape[1]

    @property
    def n(self):
        return self.basis.shape[0]


def grass_from(vectors):
    """Subspace spanned by linearly independent `vectors`."""
    vectors = [np.asarray(v) for v in vectors]
    Q = gram_schmidt(vectors)
    if Q.shape[0] != len(vectors):
        raise MatgeomError("spanning vectors are linearly dependent")
    return GrassPoint(Q.T)


def grass_distance(L1, L2):
    """``||P_L1 - P_L2||_HS``; equality means a distance of at most 1e-9."""
    if L1.n != L2.n:
        raise ShapeError("subspaces of different ambient spaces")
    return hs_norm(L1.projector - L2.projector)


def _complement_frame(L, M, max_cond=1e9):
    if L.n != M.n or L.k + M.k != L.n:
        raise MatgeomError("L and M are not complementary")
    F = np.hstack([L.basis, M.basis])
    cond = np.linalg.cond(F)
    if not np.isfinite(cond) or cond > max_cond:
        raise MatgeomError("L and M are not complementary")
    return F


def graph_chart(L, M, A):
    """Graph of the linear map `A` from L to a complement M.

    `A` is (n - k) x k in the orthonormal coordinates of M and L; the
    result is spanned by ``l_i + M.basis @ A[:, i]``. ``A = 0`` gives L.
    """
    _complement_frame(L, M)
    A = np.asarray(A)
    if A.shape != (M.k, L.k):
        raise ShapeError(f"chart coordinates must have shape {(M.k, L.k)}")
    cols = L.basis + M.basis @ A
    return grass_from(list(cols.T))


def graph_coordinates(L, M, X):
    """Inverse of :func:`graph_chart` for a subspace X transversal to M."""
    F = _complement_frame(L, M)
    C = np.linalg.solve(F, X.basis)
    top, bottom = C[: L.k], C[L.k:]
    if np.linalg.cond(top) > 1e9:
        raise NotInChartError("subspace meets M nontrivially")
    return bottom @ np.linalg.inv(top)


def annihilator(L):
    """Orthogonal complement of L (functionals vanishing on L, via the standard pairing)."""
    n, k = L.n, L.k
    dtype = L.basis.dtype
    vectors = list(L.basis.T) + list(np.eye(n, dtype=dtype))
    full = gram_schmidt(vectors)
    return GrassPoint(full[k:].T.reshape(n, n - k))


def transform_grass(A, L):
    """Image of the subspace L under an invertible `A`."""
    A = _check_invertible(A)
    return grass_from(list((A @ L.basis).T))


def sylvester_resultant(f, g):
    """Resultant of two binary forms of equal degree via the Sylvester determinant.

    Coefficients are degree-ascending in the first variable. Zero exactly
    when the forms share a projective zero (including the point at
    infinity).
    """
    f = np.asarray(f)
    g = np.asarray(g)
    a = len(f) - 1
    if len(g) - 1 != a or a < 1:
        raise ShapeError("forms must share a degree >= 1")
    S = np.zeros((2 * a, 2 * a), dtype=np.result_type(f, g, float))
    for i in range(a):
        S[i, i:i + a + 1] = f[::-1]
        S[a + i, i:i + a + 1] = g[::-1]
    return np.linalg.det(S)


def _form_zeros(c):
    """Zeros of a binary form on the projective line, as unit vectors (w1, w2)."""
    nz = np.flatnonzero(c)
    top = nz[-1] if nz.size else 0
    t = np.polynomial.polynomial.polyroots(c[: top + 1]) if top > 0 else np.zeros(0)
    pts = np.stack([t, np.ones_like(t)], axis=1) if t.size else np.zeros((0, 2))
    # missing top degree means zeros at infinity, w2 = 0
    inf = np.tile([1.0, 0.0], (len(c) - 1 - top, 1))
    pts = np.vstack([pts, inf]).astype(complex)
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def common_zero_gap(f, g):
    """Smallest ``|g(z)| / ||g||`` over the unit zeros z of `f` (0 iff a common zero).

    The Sylvester determinant detects the same event, but its size for
    composed maps is a product of powers of the factors' resultants, so no
    fixed threshold on it separates shared zeros from near-shared ones.
    """
    f = np.asarray(f)
    g = np.asarray(g)
    if not np.any(f) or not np.any(g):
        return 0.0
    Z = _form_zeros(f)
    if Z.shape[0] == 0:
        return np.inf
    vals = np.abs(_eval_form(g, Z[:, 0], Z[:, 1]))
    return float(vals.min() / np.linalg.norm(g))


@dataclass(frozen=True, eq=False)
class HomogeneousMapP1:
    """A self-map of the projective line by two binary forms of degree a.

    ``p(w1, w2) = sum_j c_j w1**j w2**(a - j)`` with coefficients ``c_j``
    listed in ascending j.
    """

    p1: np.ndarray
    p2: np.ndarray

    def __post_init__(self):
        p1 = np.asarray(self.p1)
        p2 = np.asarray(self.p2)
        if p1.ndim != 1 or p1.shape != p2.shape or p1.shape[0] < 2:
            raise ShapeError("both forms need the same degree >= 1")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        if common_zero_gap(p1, p2) <= COMMON_ZERO_TOL:
            raise ResultantZeroError("forms have a common projective zero")

    @property
    def degree(self):
        return self.p1.shape[0] - 1


def _eval_form(c, w1, w2):
    a = len(c) - 1
    return sum(cj * w1**j * w2 ** (a - j) for j, cj in enumerate(c))


def homogeneous_map_p1(f, P):
    """Image of a point of the projective line under `f`."""
    if P.rep.shape != (2,):
        raise ShapeError("expected a point of the projective line")
    w1, w2 = P.rep
    return proj_from(np.array([_eval_form(f.p1, w1, w2), _eval_form(f.p2, w1, w2)]))


def _substitute(c, g1, g2):
    """Ascending coefficients of ``c(g1(t, 1), g2(t, 1))`` padded to full degree."""
    a = len(c) - 1
    b = len(g1) - 1
    out = np.zeros(a * b + 1, dtype=np.result_type(c, g1, g2, float))
    P = np.polynomial.polynomial
    for j, cj in enumerate(c):
        term = P.polymul(P.polypow(g1, j), P.polypow(g2, a - j)) if a else np.ones(1)
        out[: len(term)] += cj * term
    return out


def compose(f, g):
    """The degree ``a*b`` map ``f o g``."""
    return HomogeneousMapP1(_substitute(f.p1, g.p1, g.p2), _substitute(f.p2, g.p1, g.p2))


def normalize_real_linear_c1(alpha, beta):
    """Write ``T(z) = alpha z + beta conj(z)`` as ``theta (z + mu conj(z))``.

    Needs ``|beta| < |alpha|``; returns ``(theta, mu)`` with ``|mu| < 1``.
    """
    if not abs(beta) < abs(alpha):
        raise MatgeomError("normal form needs |beta| < |alpha|")
    return complex(alpha), complex(beta) / complex(alpha)


def real_linear_matrix(M, N):
    """Real 2n x 2n matrix of ``z -> M z + conj(N z)`` on C^n = R^2n."""
    M = np.asarray(M, dtype=complex)
    N = np.asarray(N, dtype=complex)
    conj = np.diag(np.tile([1.0, -1.0], M.shape[0]))
    return realify(M) + conj @ realify(N)


def majorization_holds(M, N, rng, samples=200):
    """Sampled test of ``|N z| < |M z|`` on unit vectors.

    When it holds everywhere, ``z -> M z + conj(N z)`` is invertible; a
    False answer is inconclusive.
    """
    M = np.asarray(M, dtype=complex)
    N = np.asarray(N, dtype=complex)
    n = M.shape[1]
    Z = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    Z /= np.linalg.norm(Z, axis=1, keepdims=True)
    return bool(np.all(np.linalg.norm(Z @ N.T, axis=1) < np.linalg.norm(Z @ M.T, axis=1)))
