"""Matrix groups as semi-Riemannian manifolds.

The metric at an invertible `T` is ``<A, B>_T = tr(T^-1 A T^-1 B)`` (real
part of the trace over C). Left and right translations and inversion are
isometries, so geodesics are the one-parameter curves ``Y expm(t A)``;
on the positive-definite cone they are ``Z expm(t X) Z``.
"""
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .exceptions import (
    InadmissibleDirectionError,
    MatgeomError,
    NotPositiveDefiniteError,
    NotSelfAdjointError,
    ShapeError,
    SingularMatrixError,
)
from .expmlog import expm, logm_spd
from .linalg import adjoint, as_matrix, det, gram_schmidt, hs_norm, is_complex, trace
from .spectral import eigh

__all__ = [
    "GROUPS",
    "GroupPoint",
    "membership_residual",
    "tangent_residual",
    "metric_gl",
    "metric_holomorphic",
    "det_differential",
    "inverse_differential",
    "geodesic",
    "geodesic_spd",
    "spd_direction",
    "spd_transport",
    "check_spd",
    "sqrtm_spd",
    "Polar",
    "polar_decompose",
    "quotient_representative",
    "coset_residual",
    "flag_check",
    "flag_pattern_mass",
    "adapted_basis",
    "flag_check_subspaces",
]

GROUPS = ("GL", "SL", "O", "U", "SO", "SU", "SPD", "GLFlag", "SLFlag")
MEMBERSHIP_TOL = 1e-9
MAX_COND = 1e12


def _square(A):
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    return A


def _check_invertible(T):
    T = _square(T)
    if not np.isfinite(np.linalg.cond(T)) or np.linalg.cond(T) > MAX_COND:
        raise SingularMatrixError("matrix is singular or too ill-conditioned")
    return T


def _check_flag(flag, n):
    flag = tuple(int(d) for d in flag)
    if not flag or any(d <= 0 or d >= n for d in flag) or any(
        b <= a for a, b in zip(flag, flag[1:])
    ):
        raise MatgeomError(f"malformed flag {flag} for dimension {n}")
    return flag


def flag_pattern_mass(A, flag):
    """HS norm of the entries below the block upper-triangular pattern of `flag`.

    The flag ``(d_1, ..., d_k)`` stands for the coordinate subspaces
    spanned by the first ``d_j`` standard basis vectors.
    """
    A = _square(A)
    n = A.shape[0]
    flag = _check_flag(flag, n)
    block = np.searchsorted(np.array(flag), np.arange(n), side="right")
    below = block[:, None] > block[None, :]
    return float(np.sqrt(np.sum(np.abs(A[below]) ** 2)))


def flag_check(A, flag, tol=1e-12):
    """True when `A` maps every subspace of the coordinate flag into itself."""
    A = _square(A)
    return flag_pattern_mass(A, flag) <= tol * hs_norm(A)


def adapted_basis(subspaces):
    """Unitary `Q` and dims such that ``Q[:, :d_j]`` spans the j-th subspace.

    `subspaces` is a nested sequence of spanning sets (each a sequence of
    vectors, or a 2-D array of row vectors), smallest first.
    """
    vectors = []
    dims = []
    n = None
    for span in subspaces:
        span = [np.asarray(v) for v in span]
        n = span[0].shape[0]
        vectors.extend(span)
        dims.append(gram_schmidt(vectors).shape[0])
    dtype = complex if any(is_complex(v) for v in vectors) else float
    full = gram_schmidt([v.astype(dtype) for v in vectors] + list(np.eye(n, dtype=dtype)))
    return full.T, tuple(dims)


def flag_check_subspaces(A, subspaces, tol=1e-12):
    """flag_check for an arbitrary flag, given by nested spanning sets."""
    Q, dims = adapted_basis(subspaces)
    return flag_check(adjoint(Q) @ A @ Q, dims, tol)


def check_spd(P):
    """Validate a positive-definite matrix; returns it with its eigendecomposition."""
    P = _square(P)
    scale = hs_norm(P)
    if hs_norm(P - adjoint(P)) > 1e-10 * scale:
        raise NotSelfAdjointError("matrix is not self-adjoint")
    dec = eigh(P)
    if dec.eigenvalues[-1] <= 0 or dec.eigenvalues[0] <= 1e-12 * dec.eigenvalues[-1]:
        raise NotPositiveDefiniteError("matrix is not positive-definite")
    return P, dec


def membership_residual(value, group, flag=None):
    """How far `value` is from `group`; 0 means exact membership.

    GL and flag groups report ``inf`` when the matrix is numerically
    singular. SPD reports ``inf`` when not positive-definite, otherwise the
    relative self-adjointness defect.
    """
    T = _square(value)
    n = T.shape[0]
    if group not in GROUPS:
        raise MatgeomError(f"unknown group {group!r}")
    if group == "SPD":
        try:
            check_spd(T)
        except MatgeomError:
            return np.inf
        return hs_norm(T - adjoint(T)) / hs_norm(T)
    cond = np.linalg.cond(T)
    if not np.isfinite(cond) or cond > MAX_COND:
        return np.inf
    res = 0.0
    if group in ("O", "U", "SO", "SU"):
        if group in ("O", "SO") and is_complex(T):
            return np.inf
        res = max(res, hs_norm(adjoint(T) @ T - np.eye(n)))
    if group in ("SL", "SO", "SU", "SLFlag"):
        res = max(res, abs(det(T) - 1))
    if group in ("GLFlag", "SLFlag"):
        if flag is None:
            raise MatgeomError("flag groups need a flag")
        res = max(res, flag_pattern_mass(T, flag) / hs_norm(T))
    return res


@dataclass(frozen=True)
class GroupPoint:
    """A matrix certified to lie in one of the groups in :data:`GROUPS`."""

    value: np.ndarray
    group: str = "GL"
    flag: Optional[Sequence[int]] = field(default=None)

    def __post_init__(self):
        value = _square(self.value)
        object.__setattr__(self, "value", value)
        if self.flag is not None:
            object.__setattr__(self, "flag", _check_flag(self.flag, value.shape[0]))
        res = membership_residual(value, self.group, self.flag)
        if not res <= MEMBERSHIP_TOL:
            raise MatgeomError(f"matrix is not in {self.group} (residual {res:.3g})")


def tangent_residual(point, A):
    """Violation of the tangent-space condition for direction `A` at `point`.

    `A` is an ambient tangent vector at ``T = point.value``; relative to
    ``||A||_HS``.
    """
    T = point.value
    A = _square(A)
    scale = max(hs_norm(A), np.finfo(float).tiny)
    g = point.group
    res = 0.0
    if g in ("SL", "SLFlag", "SU", "SO"):
        res = max(res, abs(trace(np.linalg.solve(T, A))) / scale)
    if g in ("O", "U", "SO", "SU"):
        res = max(res, hs_norm(adjoint(T) @ A + adjoint(A) @ T) / scale)
    if g == "SPD":
        res = max(res, hs_norm(A - adjoint(A)) / scale)
    if g in ("GLFlag", "SLFlag"):
        res = max(res, flag_pattern_mass(np.linalg.solve(T, A), point.flag) / scale)
    return res


def _as_matrix_point(T):
    return T.value if isinstance(T, GroupPoint) else T


def metric_gl(T, A, B):
    """``tr(T^-1 A T^-1 B)``, taking the real part over C."""
    T = _check_invertible(_as_matrix_point(T))
    A, B = _square(A), _square(B)
    if A.shape != T.shape or B.shape != T.shape:
        raise ShapeError("tangent vectors must match the base point's shape")
    value = trace(np.linalg.solve(T, A) @ np.linalg.solve(T, B))
    return float(np.real(value))


def metric_holomorphic(T, A, B):
    """The complex bilinear form ``tr(T^-1 A T^-1 B)`` without taking real parts."""
    T = _check_invertible(_as_matrix_point(T))
    return complex(trace(np.linalg.solve(T, A) @ np.linalg.solve(T, B)))


def det_differential(T, A):
    """Derivative of det at `T` in direction `A`: ``det(T) tr(T^-1 A)``."""
    T = _check_invertible(_as_matrix_point(T))
    return det(T) * trace(np.linalg.solve(T, _square(A)))


def inverse_differential(T, A):
    """Derivative of inversion at `T` in direction `A`: ``-T^-1 A T^-1``."""
    T = _check_invertible(_as_matrix_point(T))
    Tinv = np.linalg.inv(T)
    return -Tinv @ _square(A) @ Tinv


def _admissible(point, A, tol=MEMBERSHIP_TOL):
    """Check the generator `A` of ``Y expm(t A)`` against the group of `Y`."""
    g = point.group
    scale = max(hs_norm(A), np.finfo(float).tiny)
    if g in ("SL", "SLFlag", "SU") and abs(trace(A)) > tol * scale:
        raise InadmissibleDirectionError(f"{g} geodesics need a trace-free generator")
    if g in ("O", "SO", "U", "SU"):
        if g in ("O", "SO") and is_complex(A):
            raise InadmissibleDirectionError("orthogonal geodesics need a real generator")
        if hs_norm(A + adjoint(A)) > tol * scale:
            raise InadmissibleDirectionError(f"{g} geodesics need an anti-self-adjoint generator")
    if g in ("GLFlag", "SLFlag") and not flag_check(A, point.flag):
        raise InadmissibleDirectionError("generator does not preserve the flag")


def geodesic(Y, A, t):
    """The geodesic ``Y expm(t A)`` through a group point.

    `A` is the left-invariant generator, so the velocity at ``t = 0`` is
    ``Y A``. For an SPD point `A` is read as the ambient self-adjoint
    velocity and the cone geodesic :func:`geodesic_spd` is returned.
    """
    if not isinstance(Y, GroupPoint):
        Y = GroupPoint(Y, "GL")
    A = _square(A)
    if A.shape != Y.value.shape:
        raise ShapeError("generator shape differs from the base point")
    if Y.group == "SPD":
        return GroupPoint(geodesic_spd(Y.value, A, t), "SPD")
    _admissible(Y, A)
    if t == 0:
        return Y
    return GroupPoint(Y.value @ expm(t * A).value, Y.group, Y.flag)


def sqrtm_spd(P):
    """The unique positive-definite square root."""
    P, dec = check_spd(P)
    B = dec.basis
    R = (B * np.sqrt(dec.eigenvalues)) @ adjoint(B)
    return (R + adjoint(R)) / 2


def geodesic_spd(P, S, t):
    """Cone geodesic through `P` with initial velocity `S` (self-adjoint).

    With ``Z = P^(1/2)`` the curve is ``Z expm(t Z^-1 S Z^-1) Z``.
    """
    P, _ = check_spd(P)
    S = _square(S)
    if hs_norm(S - adjoint(S)) > MEMBERSHIP_TOL * max(hs_norm(S), 1.0):
        raise NotSelfAdjointError("direction must be self-adjoint")
    if t == 0:
        return P
    Z = sqrtm_spd(P)
    Zinv = np.linalg.inv(Z)
    X = Zinv @ S @ Zinv
    G = Z @ expm(t * (X + adjoint(X)) / 2).value @ Z
    return (G + adjoint(G)) / 2


def spd_direction(P1, P2):
    """Initial velocity at `P1` of the cone geodesic reaching `P2` at ``t = 1``."""
    Z = sqrtm_spd(P1)
    Zinv = np.linalg.inv(Z)
    M = Zinv @ P2 @ Zinv
    S = Z @ logm_spd((M + adjoint(M)) / 2) @ Z
    return (S + adjoint(S)) / 2


def spd_transport(P1, P2):
    """An invertible `Z` with ``Z P1 Z* = P2``."""
    return sqrtm_spd(P2) @ np.linalg.inv(sqrtm_spd(P1))


class Polar(NamedTuple):
    R: np.ndarray
    P: np.ndarray


def polar_decompose(T):
    """``T = R P`` with `R` orthogonal/unitary and ``P = (T* T)^(1/2)``."""
    T = _check_invertible(T)
    P = sqrtm_spd(quotient_representative(T))
    R = np.linalg.solve(P.T, T.T).T
    return Polar(R, P)


def quotient_representative(T):
    """``T* T``, which is constant on the cosets ``{R T : R orthogonal/unitary}``."""
    T = _check_invertible(T)
    Q = adjoint(T) @ T
    return (Q + adjoint(Q)) / 2


def coset_residual(T1, T2):
    """``||R* R - I||_HS`` for ``R = T2 T1^-1``; zero iff T2 = R T1 with R unitary."""
    T1 = _check_invertible(T1)
    R = np.linalg.solve(T1.T, _square(T2).T).T
    return hs_norm(adjoint(R) @ R - np.eye(R.shape[0]))
