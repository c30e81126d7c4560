"""Matrix exponential and logarithms.

`expm` is a plain truncated Taylor series behind scaling and squaring, so
every result can be traced back to the power series. The logarithms
cover the cases with a clean existence story: positive-definite
matrices (unique self-adjoint log), unitary matrices (anti-self-adjoint
log), rotations (real antisymmetric log), and a decision procedure for
real logs of diagonalisable real matrices.
"""
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import (
    NoRealAntisymmetricLog,
    NotPositiveDefiniteError,
    NotSelfAdjointError,
    NotUnitaryError,
    ShapeError,
    UnsupportedError,
)
from .linalg import adjoint, as_matrix, det, hs_norm, is_complex, op_norm, trace, unitary_residual
from .spectral import eig_normal, eigh

__all__ = [
    "ExpResult",
    "expm",
    "ExpIdentityReport",
    "expm_identities_check",
    "det_exp_identity",
    "rk4_exp",
    "exp_ode_residual",
    "rk4_order_ratio",
    "logm_spd",
    "logm_unitary",
    "logm_special_orthogonal",
    "Obstruction",
    "LogReport",
    "real_log_exists",
]

TAYLOR_TERM_BOUND = 1e-18
# eigenspaces of split clusters must be this well separated (condition number)
SPLIT_COND = 1e4


@dataclass(frozen=True)
class ExpResult:
    value: np.ndarray
    scaling_squarings: int
    taylor_terms: int


def _square(A):
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    return A


def expm(A):
    """Matrix exponential by scaling and squaring of the Taylor series.

    Picks the smallest ``s >= 0`` with ``||A / 2**s||_op <= 1``, sums the
    series of ``X = A / 2**s`` until the bound ``||X||^k / k!`` on the next
    term falls below 1e-18, then squares `s` times.
    """
    A = _square(A)
    n = A.shape[0]
    norm = op_norm(A)
    s = max(0, math.ceil(math.log2(norm))) if norm > 0 else 0
    X = A / 2.0**s
    nx = norm / 2.0**s
    term = np.eye(n, dtype=A.dtype)
    total = term.copy()
    k = 0
    bound = 1.0
    while True:
        k += 1
        bound *= nx / k
        if bound <= TAYLOR_TERM_BOUND:
            break
        term = term @ X / k
        total = total + term
    for _ in range(s):
        total = total @ total
    return ExpResult(total, s, k)


@dataclass(frozen=True)
class ExpIdentityReport:
    """Residuals of the exponential group laws for a pair (A, B).

    ``product`` is only meaningful when ``commuting`` is true; for a
    non-commuting pair it is reported but the identity is not expected.
    """

    inverse: float
    adjoint: float
    commutator: float
    commuting: bool
    product: float


def expm_identities_check(A, B, commute_tol=1e-12):
    A = _square(A)
    B = _square(B)
    if A.shape != B.shape:
        raise ShapeError("A and B must have the same shape")
    n = A.shape[0]
    eA = expm(A).value
    inverse = hs_norm(eA @ expm(-A).value - np.eye(n)) / math.sqrt(n)
    adj = hs_norm(adjoint(eA) - expm(adjoint(A)).value) / max(hs_norm(eA), 1.0)
    comm = hs_norm(A @ B - B @ A)
    eAB = expm(A + B).value
    product = hs_norm(eAB - eA @ expm(B).value) / max(hs_norm(eAB), 1.0)
    return ExpIdentityReport(inverse, adj, comm, comm <= commute_tol, product)


def det_exp_identity(A):
    """``(det(expm(A)), exp(trace(A)))``; the two should agree."""
    A = _square(A)
    lhs = det(expm(A).value)
    tr = trace(A)
    rhs = np.exp(tr)
    if not is_complex(A):
        lhs, rhs = float(np.real(lhs)), float(rhs)
    return lhs, rhs


def rk4_exp(A, t_grid):
    """Integrate ``E' = A E`` with classical RK4 on `t_grid`.

    Starts from ``E(t_grid[0]) = expm(t_grid[0] A)``, which is the
    identity when the grid starts at 0. Returns the stacked states.
    """
    A = _square(A)
    t = np.asarray(t_grid, dtype=float)
    if t.size == 0:
        raise ValueError("empty time grid")
    if np.any(np.diff(t) <= 0):
        raise ValueError("time grid must be strictly ascending")
    E = expm(t[0] * A).value if t[0] != 0 else np.eye(A.shape[0], dtype=A.dtype)
    out = [E]
    for h in np.diff(t):
        k1 = A @ E
        k2 = A @ (E + h / 2 * k1)
        k3 = A @ (E + h / 2 * k2)
        k4 = A @ (E + h * k3)
        E = E + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(E)
    return np.array(out)


def exp_ode_residual(A, t_grid):
    """Largest HS distance between the RK4 solution and ``expm(t A)`` on the grid."""
    A = _square(A)
    states = rk4_exp(A, t_grid)
    return max(hs_norm(E - expm(t * A).value) for t, E in zip(np.asarray(t_grid, float), states))


def rk4_order_ratio(A, t_end=1.0, steps=50):
    """Error reduction factor of RK4 when the step is halved (about 16)."""
    coarse = exp_ode_residual(A, np.linspace(0.0, t_end, steps + 1))
    fine = exp_ode_residual(A, np.linspace(0.0, t_end, 2 * steps + 1))
    return coarse / fine


def _check_spd(P):
    P = _square(P)
    scale = hs_norm(P)
    if hs_norm(P - adjoint(P)) > 1e-10 * scale:
        raise NotSelfAdjointError("matrix is not self-adjoint")
    dec = eigh(P)
    if dec.eigenvalues[0] <= 1e-12 * max(dec.eigenvalues[-1], 0.0) or dec.eigenvalues[-1] <= 0:
        raise NotPositiveDefiniteError("matrix is not positive-definite")
    return P, dec


def logm_spd(P):
    """The unique self-adjoint logarithm of a positive-definite matrix."""
    P, dec = _check_spd(P)
    B = dec.basis
    A = (B * np.log(dec.eigenvalues)) @ adjoint(B)
    return (A + adjoint(A)) / 2


def logm_unitary(U, tol=1e-9):
    """Anti-self-adjoint logarithm of a unitary matrix, principal arguments."""
    U = _square(U)
    if unitary_residual(U) > tol:
        raise NotUnitaryError("matrix is not unitary")
    dec = eig_normal(U)
    theta = np.angle(dec.eigenvalues)
    B = dec.basis
    A = (B * (1j * theta)) @ B.conj().T
    return (A - A.conj().T) / 2


def _pairs_generator(vectors):
    """Antisymmetric generator ``pi * sum (u2 u1^T - u1 u2^T)`` over consecutive pairs."""
    n = vectors.shape[0]
    J = np.zeros((n, n))
    for j in range(0, vectors.shape[1], 2):
        u1, u2 = vectors[:, j], vectors[:, j + 1]
        J += np.outer(u2, u1) - np.outer(u1, u2)
    return np.pi * J


def logm_special_orthogonal(R, tol=1e-9):
    """Real antisymmetric logarithm of a rotation matrix.

    Eigenvalues ``e^{i theta}`` away from -1 take principal logs; the -1
    eigenspace (even-dimensional when det R = 1) is split into
    consecutive orthonormal pairs, each carrying a rotation by pi.
    """
    R = _square(R)
    if is_complex(R):
        raise ShapeError("expected a real matrix")
    n = R.shape[0]
    if unitary_residual(R) > tol:
        raise NotUnitaryError("matrix is not orthogonal")
    d = det(R)
    if abs(d + 1) <= tol:
        raise NoRealAntisymmetricLog("det R = -1: no real antisymmetric logarithm")
    if abs(d - 1) > tol:
        raise NotUnitaryError("matrix is not orthogonal")
    dec = eig_normal(R)
    minus = np.abs(dec.eigenvalues + 1) <= 1e-6
    rest = dec.basis[:, ~minus]
    theta = np.angle(dec.eigenvalues[~minus])
    A = ((rest * (1j * theta)) @ rest.conj().T).real
    m = int(minus.sum())
    if m:
        if m % 2:
            raise NoRealAntisymmetricLog("odd-dimensional -1 eigenspace")
        # the -1 eigenspace is conjugation invariant, so its projector is real
        block = dec.basis[:, minus]
        proj = (block @ block.conj().T).real
        sub = eigh((proj + proj.T) / 2)
        A = A + _pairs_generator(sub.basis[:, n - m:])
    return (A - A.T) / 2


class Obstruction(enum.Enum):
    NONE = "None"
    NEGATIVE_REAL_EIGENVALUE = "NegativeRealEigenvalue"
    SINGULAR = "Singular"


@dataclass(frozen=True)
class LogReport:
    """Outcome of the real-logarithm decision.

    `value` is a real logarithm when one was constructed, `residual` the
    HS distance ``||expm(value) - B||_HS / ||B||_HS``.
    """

    exists_real: bool
    obstruction: Obstruction
    value: Optional[np.ndarray] = None
    residual: Optional[float] = None


def _clusters(values, tol):
    """Single-linkage clusters under the relative distance ``|z - w| / max(|z|, |w|)``."""

    def close(z, w):
        return abs(z - w) <= tol * max(abs(z), abs(w))

    groups = []
    for j, z in enumerate(values):
        hits = [g for g in groups if any(close(z, values[k]) for k in g)]
        merged = [j]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(sorted(merged))
    return groups


def _eigenspaces(B, lam, scale, tol, rank_tol):
    """Group eigenvalues into clusters and certify each one's eigenspace.

    Yields ``(mu, size, vectors)``; `vectors` is None when the nullity of
    ``B - mu I`` falls short of the cluster size, i.e. the cluster hides a
    Jordan block (or eigenvalues too close to resolve). A failing cluster
    is re-clustered a hundredfold finer, down to 1e-8 relative, and the
    split is accepted only if every finer piece passes and the pieces'
    eigenvectors together have condition number at most ``SPLIT_COND``.
    """
    n = B.shape[0]
    for group in _clusters(lam, tol):
        vals = lam[group]
        mu = complex(np.mean(vals))
        # conjugate pairs from a real matrix are exact, so a cluster that
        # holds both halves of a pair has a mean that is real up to rounding
        spread = np.max(np.abs(vals - mu))
        real = abs(mu.imag) <= max(1e-8 * abs(mu), spread)
        shift = mu.real if real else mu
        _, s, vh = np.linalg.svd(B - shift * np.eye(n))
        nullity = int(np.sum(s <= rank_tol * scale))
        m = len(group)
        if nullity >= m:
            yield complex(shift), m, vh[n - m:].conj().T
            continue
        if m > 1 and tol > 1e-8:
            parts = list(_eigenspaces(B, vals, scale, tol / 100, rank_tol))
            # a perturbed Jordan block splits into eigenvalues about
            # eps**(1/k) apart whose eigenvectors are nearly parallel, while
            # genuinely distinct eigenvalues keep well separated eigenvectors
            ok = len(parts) > 1 and all(p[2] is not None for p in parts)
            if ok:
                ok = np.linalg.cond(np.hstack([p[2] for p in parts])) <= SPLIT_COND
            if ok:
                yield from parts
                continue
        yield complex(shift), m, None


def real_log_exists(B, cluster_tol=1e-2, rank_tol=1e-9):
    """Decide whether a real matrix has a real logarithm.

    Only diagonalisable-over-C inputs are decided when a negative real
    eigenvalue is present: a real log then exists iff every negative
    eigenvalue has even multiplicity. Defective inputs with a negative
    eigenvalue raise :class:`UnsupportedError`. When a log exists and the
    matrix is diagonalisable one is constructed.

    Eigenvalues come from LAPACK rather than from roots of the
    characteristic polynomial: an m-fold root is only resolved to about
    ``eps**(1/m)`` there, while a semisimple multiple eigenvalue of the
    matrix is well conditioned. Eigenvalues are grouped coarsely and each
    group is certified by the nullity of ``B - mu I`` at its mean.
    """
    B = _square(B)
    if is_complex(B):
        raise ShapeError("expected a real matrix")
    n = B.shape[0]
    scale = op_norm(B)
    if scale == 0.0:
        return LogReport(False, Obstruction.SINGULAR)
    if np.linalg.svd(B, compute_uv=False)[-1] <= 1e-12 * scale:
        return LogReport(False, Obstruction.SINGULAR)
    lam = np.linalg.eigvals(B)

    columns, logs, every = [], [], []
    negative_odd = has_negative = defective = False
    for mu, m, vecs in _eigenspaces(B, lam, scale, cluster_tol, rank_tol):
        negative = mu.imag == 0.0 and mu.real < 0
        has_negative |= negative
        if vecs is None:
            defective = True
            continue
        every += list(vecs.T)
        if not negative:
            columns += list(vecs.T)
            logs += [np.log(mu)] * m
        elif m % 2:
            negative_odd = True
        else:
            vecs = vecs.real
            base = math.log(-mu.real)
            for j in range(0, m, 2):
                w = vecs[:, j] - 1j * vecs[:, j + 1]
                columns += [w, w.conj()]
                logs += [base + 1j * np.pi, base - 1j * np.pi]

    if not defective:
        # nearly parallel eigenvectors signal a Jordan block the clustering missed
        defective = np.linalg.cond(np.array(every).T) > 1e10
    if defective:
        if has_negative:
            raise UnsupportedError("defective matrix with a negative real eigenvalue")
        return LogReport(True, Obstruction.NONE)
    if negative_odd:
        return LogReport(False, Obstruction.NEGATIVE_REAL_EIGENVALUE)
    V = np.array(columns).T
    A = ((V * np.array(logs)) @ np.linalg.inv(V)).real
    residual = hs_norm(expm(A).value - B) / hs_norm(B)
    return LogReport(True, Obstruction.NONE, A, residual)
