"""Dense real/complex matrix basics.

Matrices are plain numpy arrays. The field is carried by the dtype: any
complex dtype means the complex field, anything else is treated as real.
Inner products are linear in the first slot and conjugate-linear in the
second, ``<z, w> = sum z_j conj(w_j)``.
"""
import itertools

import numpy as np

from .exceptions import (
    ConvergenceError,
    FieldMismatchError,
    NotOrthonormalError,
    ShapeError,
)

__all__ = [
    "is_complex",
    "as_matrix",
    "complexify",
    "realify",
    "realify_vector",
    "complexify_vector",
    "inner_product",
    "vector_norm",
    "adjoint",
    "trace",
    "det",
    "det_permutation_sum",
    "permutation_sign",
    "hs_norm",
    "op_norm",
    "gram_schmidt",
    "orthogonal_projection",
    "self_adjoint_residual",
    "normal_residual",
    "unitary_residual",
]

OP_NORM_TOL = 1e-12
OP_NORM_MAXITER = 10_000
GS_RANK_TOL = 1e-10


def is_complex(A):
    return np.iscomplexobj(A)


def as_matrix(A):
    """Return `A` as a 2-D float or complex array."""
    A = np.asarray(A)
    if A.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got shape {A.shape}")
    if A.dtype == object:
        return A
    if not np.iscomplexobj(A):
        return A.astype(float, copy=False)
    return A.astype(complex, copy=False)


def _square(A):
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    return A


def complexify(A):
    """The complex-linear extension of a real matrix (same entries)."""
    return np.asarray(A).astype(complex)


def realify(A):
    """Real 2n x 2n matrix of a complex n x n one.

    Coordinates are interleaved, ``(x_1, y_1, x_2, y_2, ...)`` for
    ``z_j = x_j + i y_j``, so each entry ``a`` becomes the block
    ``[[Re a, -Im a], [Im a, Re a]]``.
    """
    A = np.asarray(A, dtype=complex)
    m, n = A.shape
    out = np.empty((2 * m, 2 * n))
    out[0::2, 0::2] = A.real
    out[0::2, 1::2] = -A.imag
    out[1::2, 0::2] = A.imag
    out[1::2, 1::2] = A.real
    return out


def realify_vector(z):
    z = np.asarray(z, dtype=complex)
    out = np.empty(2 * z.size)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def complexify_vector(x):
    """Inverse of :func:`realify_vector`."""
    x = np.asarray(x, dtype=float)
    if x.size % 2:
        raise ShapeError("realified vectors have even length")
    return x[0::2] + 1j * x[1::2]


def inner_product(v, w):
    """``sum v_j conj(w_j)``; both vectors must share a dimension and field."""
    v = np.asarray(v)
    w = np.asarray(w)
    if v.shape != w.shape or v.ndim != 1:
        raise ShapeError(f"dimension mismatch: {v.shape} vs {w.shape}")
    if is_complex(v) != is_complex(w):
        raise FieldMismatchError("inner product of a real and a complex vector")
    return np.vdot(w, v)


def vector_norm(v):
    v = np.asarray(v)
    return float(np.sqrt(np.vdot(v, v).real))


def adjoint(T):
    T = np.asarray(T)
    return T.conj().T if is_complex(T) else T.T


def trace(T):
    T = _square(T)
    return T.trace()


def det(T):
    """Determinant by LU factorisation with partial pivoting (LAPACK)."""
    T = _square(T)
    if T.dtype == object:
        return det_permutation_sum(T)
    return np.linalg.det(T)


def permutation_sign(perm):
    """Sign of a permutation of ``range(n)``, via its cycle decomposition."""
    n = len(perm)
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return -1 if (n - cycles) % 2 else 1


def det_permutation_sum(T):
    """Determinant as the signed sum over all permutations.

    Exponential cost; intended as an independent check for n <= 5. Works
    on object arrays (ints, Fractions) as well, giving exact results.
    """
    T = np.asarray(T)
    n = T.shape[0]
    if T.shape != (n, n):
        raise ShapeError(f"expected a square matrix, got shape {T.shape}")
    total = 0
    for perm in itertools.permutations(range(n)):
        term = permutation_sign(perm)
        for j in range(n):
            term = term * T[j, perm[j]]
        total = total + term
    return total


def hs_norm(T):
    """Hilbert-Schmidt (Frobenius) norm."""
    T = np.asarray(T)
    a = np.abs(T)
    m = a.max(initial=0.0)
    if m == 0.0 or not np.isfinite(m):
        return float(m)
    # scale by the largest entry so tiny or huge entries do not under/overflow
    return float(m * np.sqrt(np.sum((a / m) ** 2)))


def op_norm(T, tol=OP_NORM_TOL, maxiter=OP_NORM_MAXITER):
    """Operator norm ``max |T v|`` over unit `v`.

    Power iteration on ``T* T``, started from the all-ones vector plus a
    small fixed-seed perturbation, stopping once the Rayleigh quotient
    changes by at most ``tol`` relative. After a few plain steps the
    iteration operator is squared (and renormalised) each step, so nearly
    tied singular values do not stall convergence.
    """
    T = as_matrix(T)
    if not np.any(T):
        return 0.0
    # work with T / ||T||_HS so T* T neither underflows nor overflows
    hs = hs_norm(T)
    T = T / hs
    M = adjoint(T) @ T
    n = M.shape[0]
    rng = np.random.default_rng(12345)
    x = np.ones(n) + 1e-3 * rng.standard_normal(n)
    x = x / np.linalg.norm(x)
    P = M / hs_norm(M)
    rho = 0.0
    for it in range(maxiter):
        y = P @ x
        ny = np.linalg.norm(y)
        if ny == 0.0:
            # landed in the kernel; restart from a random direction
            x = rng.standard_normal(n)
            x = x / np.linalg.norm(x)
            continue
        x = y / ny
        rho_new = float(np.vdot(x, M @ x).real)
        if abs(rho_new - rho) <= tol * rho_new:
            return float(hs * np.sqrt(rho_new))
        rho = rho_new
        if 8 <= it < 72:
            P = P @ P
            P = P / hs_norm(P)
    raise ConvergenceError(
        f"power iteration did not converge in {maxiter} iterations",
        bracket=(float(hs * np.sqrt(max(rho, 0.0))), hs),
    )


def gram_schmidt(vectors, tol=GS_RANK_TOL):
    """Orthonormalise `vectors`, dropping numerically dependent ones.

    A vector is dropped when its residual after projecting out the
    previous ones has norm at most ``tol`` times the largest input norm.
    Returns an array whose rows are the orthonormal vectors (possibly
    zero rows).
    """
    vs = [np.asarray(v) for v in vectors]
    if not vs:
        raise ShapeError("gram_schmidt needs at least one vector")
    dim = vs[0].shape
    if any(v.shape != dim or v.ndim != 1 for v in vs):
        raise ShapeError("vectors must share a common dimension")
    fields = {is_complex(v) for v in vs}
    if len(fields) > 1:
        raise FieldMismatchError("mixed real and complex vectors")
    dtype = complex if fields.pop() else float
    scale = max(vector_norm(v) for v in vs)
    basis = []
    if scale == 0.0:
        return np.zeros((0, dim[0]), dtype=dtype)
    for v in vs:
        r = v.astype(dtype)
        # two passes of classical Gram-Schmidt keep orthogonality at eps level
        for _ in range(2):
            for q in basis:
                r = r - np.vdot(q, r) * q
        nr = vector_norm(r)
        if nr > tol * scale:
            basis.append(r / nr)
    if not basis:
        return np.zeros((0, dim[0]), dtype=dtype)
    return np.array(basis)


def orthogonal_projection(basis, u, tol=1e-10):
    """Project `u` onto the span of the orthonormal rows of `basis`."""
    Q = np.atleast_2d(np.asarray(basis))
    u = np.asarray(u)
    if Q.size == 0:
        return np.zeros_like(u)
    if Q.shape[1] != u.shape[0]:
        raise ShapeError("basis and vector dimensions differ")
    gram = Q.conj() @ Q.T
    if np.max(np.abs(gram - np.eye(Q.shape[0]))) > tol:
        raise NotOrthonormalError("projection basis is not orthonormal")
    coeffs = Q.conj() @ u
    return coeffs @ Q


def self_adjoint_residual(A):
    A = np.asarray(A)
    return hs_norm(A - adjoint(A))


def normal_residual(T):
    T = np.asarray(T)
    Ts = adjoint(T)
    return hs_norm(T @ Ts - Ts @ T)


def unitary_residual(U):
    U = np.asarray(U)
    return hs_norm(adjoint(U) @ U - np.eye(U.shape[1]))
