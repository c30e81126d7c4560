"""Random test objects: matrices with prescribed structure.

Every sampler takes a ``numpy.random.Generator`` so results are
reproducible from a seed.
"""
import numpy as np

from .expmlog import expm
from .linalg import gram_schmidt, op_norm


def random_matrix(rng, n, m=None, complex=False):
    m = n if m is None else m
    A = rng.standard_normal((n, m))
    if complex:
        A = A + 1j * rng.standard_normal((n, m))
    return A


def random_with_op_norm(rng, n, norm, complex=False):
    """Random square matrix rescaled to operator norm `norm`."""
    A = random_matrix(rng, n, complex=complex)
    return A * (norm / op_norm(A))


def random_self_adjoint(rng, n, complex=False):
    A = random_matrix(rng, n, complex=complex)
    return (A + A.conj().T) / 2


def random_antisymmetric(rng, n, complex=False):
    A = random_matrix(rng, n, complex=complex)
    return (A - A.conj().T) / 2


def random_spd(rng, n, complex=False, shift=0.1):
    """``T* T + shift I`` for a random `T`."""
    T = random_matrix(rng, n, complex=complex)
    return T.conj().T @ T + shift * np.eye(n)


def random_unitary(rng, n):
    """Columns are Gram-Schmidt orthonormalised random complex vectors."""
    Q = gram_schmidt(list(random_matrix(rng, n, complex=True)))
    return Q.T


def random_orthogonal(rng, n):
    return gram_schmidt(list(random_matrix(rng, n))).T


def random_special_orthogonal(rng, n, scale=1.0):
    """Exponential of a random antisymmetric matrix."""
    return expm(scale * random_antisymmetric(rng, n)).value


def random_invertible(rng, n, complex=False, max_cond=1e4):
    while True:
        T = random_matrix(rng, n, complex=complex)
        if np.linalg.cond(T) <= max_cond:
            return T


def random_unimodular(rng, n, steps=None):
    """Integer matrix with determinant 1, a product of elementary shears."""
    steps = 3 * n if steps is None else steps
    U = np.eye(n, dtype=int)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        E = np.eye(n, dtype=int)
        E[i, j] = rng.integers(-2, 3)
        U = U @ E
    return U
