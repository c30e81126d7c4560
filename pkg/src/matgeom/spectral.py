"""Spectral decomposition and polynomial calculus for square matrices."""
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from numpy.polynomial import Polynomial

from .exceptions import (
    ConvergenceError,
    NotNormalError,
    NotSelfAdjointError,
    ShapeError,
)
from .linalg import adjoint, as_matrix, hs_norm, is_complex, op_norm

__all__ = [
    "EigenDecomposition",
    "eigh",
    "eig_normal",
    "char_poly",
    "poly_eval",
    "cayley_hamilton_residual",
    "power_reduce",
    "eigenvalues_general",
    "is_nonnegative",
]

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
CLUSTER_TOL = 1e-8


class EigenDecomposition(NamedTuple):
    """Eigenvalues and a matrix whose columns are orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    def reconstruct(self):
        B = self.basis
        return (B * self.eigenvalues) @ B.conj().T


def _square(A):
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    return A


def _jacobi_pair(a, b, r):
    """Cosine/sine annihilating r in the symmetric 2x2 [[a, r], [r, b]]."""
    tau = (b - a) / (2.0 * r)
    if tau >= 0:
        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    return c, t * c


def eigh(A, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a real symmetric or complex Hermitian matrix.

    Cyclic Jacobi: sweep the strict upper triangle in row-major order,
    zeroing each pivot with a (phase-adjusted) plane rotation, until the
    off-diagonal Frobenius mass drops below ``tol * ||A||_HS``.
    Eigenvalues are returned ascending and are always real.
    """
    A = _square(A)
    n = A.shape[0]
    scale = hs_norm(A)
    if hs_norm(A - adjoint(A)) > 1e-10 * scale:
        raise NotSelfAdjointError("eigh needs a self-adjoint matrix")
    cplx = is_complex(A)
    dtype = complex if cplx else float
    # symmetrise so round-off in the input cannot stall the sweeps
    W = (A + adjoint(A)).astype(dtype) / 2
    V = np.eye(n, dtype=dtype)
    target = tol * scale

    def off(M):
        return np.linalg.norm(M - np.diag(np.diag(M)))

    sweeps = 0
    while off(W) > target:
        if sweeps == max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = W[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                c, s = _jacobi_pair(W[p, p].real, W[q, q].real, r)
                if cplx:
                    phase = apq / r
                    G = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                else:
                    G = np.array([[c, s], [-s, c]])
                    if apq < 0:
                        G = np.array([[c, -s], [s, c]])
                idx = [p, q]
                W[:, idx] = W[:, idx] @ G
                W[idx, :] = G.conj().T @ W[idx, :]
                W[p, q] = W[q, p] = 0.0
                V[:, idx] = V[:, idx] @ G
    lam = np.diag(W).real.copy()
    order = np.argsort(lam, kind="stable")
    return EigenDecomposition(lam[order], V[:, order])


def eig_normal(T, cluster_tol=CLUSTER_TOL):
    """Unitary diagonalisation of a normal matrix.

    Splits ``T = T1 + i T2`` into self-adjoint parts, diagonalises `T1`,
    then diagonalises `T2` inside each eigenvalue cluster of `T1`
    (clusters: gaps at most ``cluster_tol * ||T1||_op``). Real input is
    treated as its complexification.
    """
    T = _square(T).astype(complex)
    n = T.shape[0]
    scale = hs_norm(T)
    Ts = adjoint(T)
    if hs_norm(T @ Ts - Ts @ T) > 1e-10 * max(scale**2, np.finfo(float).tiny):
        raise NotNormalError("matrix is not normal")
    T1 = (T + Ts) / 2
    T2 = (T - Ts) / 2j
    first = eigh(T1)
    B = first.basis.copy()
    gap = cluster_tol * max(op_norm(T1), np.finfo(float).tiny)
    lam = first.eigenvalues
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and lam[stop] - lam[stop - 1] <= gap:
            stop += 1
        if stop - start > 1:
            block = B[:, start:stop]
            inner = block.conj().T @ T2 @ block
            sub = eigh((inner + inner.conj().T) / 2)
            B[:, start:stop] = block @ sub.basis
        start = stop
    eigenvalues = np.einsum("ij,ik,kj->j", B.conj(), T, B)
    return EigenDecomposition(eigenvalues, B)


def _exact(A):
    return A.dtype == object or np.issubdtype(A.dtype, np.integer)


def char_poly(A):
    """Monic characteristic polynomial ``det(zI - A)``, degree-ascending.

    Faddeev-LeVerrier recursion. Integer and object (Fraction) input is
    handled in exact arithmetic.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    exact = _exact(A)
    if exact:
        A = A.astype(object)
        eye = np.eye(n, dtype=int).astype(object)
        M = np.zeros((n, n), dtype=int).astype(object)
    else:
        A = as_matrix(A)
        eye = np.eye(n)
        M = np.zeros((n, n), dtype=A.dtype)
    coeffs = [None] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        M = A.dot(M) + coeffs[n - k + 1] * eye
        tr = A.dot(M).trace()
        if exact:
            c = Fraction(-tr) / k
            coeffs[n - k] = int(c) if c.denominator == 1 else c
        else:
            coeffs[n - k] = -tr / k
    coef = np.array(coeffs, dtype=object if exact else A.dtype)
    return Polynomial(coef)


def _coefficients(p):
    return p.coef if isinstance(p, Polynomial) else np.asarray(p)


def poly_eval(p, A):
    """Evaluate a polynomial at a square matrix by Horner's rule."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    c = _coefficients(p)
    n = A.shape[0]
    if c.dtype == object or A.dtype == object:
        eye = np.eye(n, dtype=int).astype(object)
    else:
        eye = np.eye(n, dtype=np.result_type(A.dtype, c.dtype, float))
    R = c[-1] * eye
    for ck in c[-2::-1]:
        R = R.dot(A) + ck * eye
    return R


def cayley_hamilton_residual(A):
    """``||q_A(A)||_HS / max(1, ||A||_op^n)`` for the characteristic polynomial q_A."""
    A = as_matrix(A)
    n = A.shape[0]
    q = char_poly(A)
    return hs_norm(poly_eval(q, A)) / max(1.0, op_norm(A) ** n)


def power_reduce(A, m):
    """Polynomial of degree < n agreeing with ``z**m`` at `A`.

    The remainder of ``z**m`` modulo the characteristic polynomial, built
    by multiplying by z one step at a time.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    A = np.asarray(A)
    q = _coefficients(char_poly(A))
    n = len(q) - 1
    if m < n:
        coef = np.zeros(m + 1)
        coef[m] = 1.0
        return Polynomial(coef)
    dtype = q.dtype
    r = np.zeros(n, dtype=dtype)
    r[0] = 1
    for _ in range(m):
        top = r[-1]
        r = np.concatenate([np.zeros(1, dtype=dtype), r[:-1]])
        # z**n == -(q_0 + ... + q_{n-1} z**(n-1)) modulo q
        r = r - top * q[:-1]
    return Polynomial(r)


def eigenvalues_general(A, maxiter=500):
    """Eigenvalues of an arbitrary square matrix.

    Durand-Kerner iteration on the characteristic polynomial. Accuracy is
    conditional: a root of multiplicity m is only resolved to about
    ``eps**(1/m)``, so callers should cluster before comparing.
    """
    A = _square(A)
    c = np.asarray(_coefficients(char_poly(A)), dtype=complex)
    n = len(c) - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    radius = 1.0 + np.max(np.abs(c[:-1]))
    z = radius * (0.4 + 0.9j) ** np.arange(n)
    horner = c[::-1]
    for _ in range(maxiter):
        num = np.polyval(horner, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        step = num / np.prod(diff, axis=1)
        z = z - step
        if np.max(np.abs(step)) <= 1e-15 * (1.0 + np.max(np.abs(z))):
            break
    return z[np.lexsort((z.imag, z.real))]


def is_nonnegative(A):
    """Self-adjoint `A` with spectrum in ``[-1e-10 ||A||_op, inf)``."""
    dec = eigh(A)
    return bool(dec.eigenvalues[0] >= -1e-10 * op_norm(A))
