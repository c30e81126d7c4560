"""Concrete submersions, their orthogonal connections, and horizontal lifts.

Points of the source manifold are real ambient vectors (complex vectors
are realified, matrices are flattened row-major). Points of the target
are represented through an embedding into a real vector space:

* sphere -> RP^n and sphere -> CP^n send a unit vector to the orthogonal
  projector onto its line, ``p p*`` (real and imaginary parts flattened);
* GL -> SPD sends ``T`` to ``T^T T``;
* the coordinate projection ``R^m -> R^k`` is the flat reference case.

Differentials are exact (each map is quadratic); :meth:`Submersion.df_fd`
gives a central finite-difference version for cross-checks. The
connection is always the ambient-Euclidean orthogonal complement of the
vertical space.
"""
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .exceptions import ConvergenceError, MatgeomError, OffManifoldError, TrustRegionError
from .linalg import complexify_vector, realify_vector

__all__ = [
    "Submersion",
    "SphereToRP",
    "SphereToCP",
    "GlToSpd",
    "CoordinateProjection",
    "Connection",
    "LiftedPath",
    "vertical_space",
    "horizontal_space",
    "lift_velocity",
    "horizontal_lift",
    "FiberTransport",
    "fiber_transport",
    "reversed_path",
    "curvature_numeric",
    "holonomy_phase",
]

MEMBERSHIP_TOL = 1e-9
RANK_TOL = 1e-8
FD_STEP = 1e-6


class Submersion:
    """Base class: a smooth map with surjective differential."""

    ambient_dim: int
    manifold_dim: int
    target_dim: int

    def f(self, p):
        raise NotImplementedError

    def df(self, p, v):
        """Differential at `p` applied to the ambient tangent vector(s) `v` (columns)."""
        raise NotImplementedError

    def df_fd(self, p, v, h=FD_STEP):
        """Central finite-difference differential, for cross-checking :meth:`df`."""
        v = np.asarray(v, dtype=float)
        if v.ndim == 1:
            return (self.f(p + h * v) - self.f(p - h * v)) / (2 * h)
        return self._columns(lambda q, col: self.df_fd(q, col, h), p, v)

    def _columns(self, d, p, V):
        if V.shape[1] == 0:
            return np.zeros((self.f(p).shape[0], 0))
        return np.stack([d(p, col) for col in V.T], axis=1)

    def tangent_basis(self, p):
        """Orthonormal columns spanning the tangent space at `p`."""
        return np.eye(self.ambient_dim)

    def membership_residual(self, p):
        return 0.0

    def project(self, p):
        """Nearest point of the manifold (identity for open subsets)."""
        return p

    def check_point(self, p):
        p = np.asarray(p, dtype=float)
        if p.shape != (self.ambient_dim,):
            raise OffManifoldError(f"expected an ambient vector of length {self.ambient_dim}")
        if not self.membership_residual(p) <= MEMBERSHIP_TOL:
            raise OffManifoldError("point is not on the manifold")
        return p

    def in_trust_region(self, p):
        return True


class _Sphere(Submersion):
    def membership_residual(self, p):
        return abs(np.linalg.norm(p) - 1.0)

    def project(self, p):
        return p / np.linalg.norm(p)

    def tangent_basis(self, p):
        _, _, vh = np.linalg.svd(p[None, :])
        return vh[1:].T


class SphereToRP(Submersion):
    """``S^n -> RP^n``, ``p -> p p^T``; a local diffeomorphism with 2-point fibres."""

    def __init__(self, n):
        self.n = n
        self.ambient_dim = n + 1
        self.manifold_dim = n
        self.target_dim = n

    membership_residual = _Sphere.membership_residual
    project = _Sphere.project
    tangent_basis = _Sphere.tangent_basis

    def f(self, p):
        return np.outer(p, p).ravel()

    def df(self, p, v):
        v = np.asarray(v, dtype=float)
        if v.ndim == 2:
            return self._columns(self.df, p, v)
        return (np.outer(v, p) + np.outer(p, v)).ravel()


class SphereToCP(Submersion):
    """Hopf map ``S^(2n+1) -> CP^n``, ``z -> z z*``, on realified coordinates."""

    def __init__(self, n):
        self.n = n
        self.ambient_dim = 2 * (n + 1)
        self.manifold_dim = 2 * n + 1
        self.target_dim = 2 * n

    membership_residual = _Sphere.membership_residual
    project = _Sphere.project
    tangent_basis = _Sphere.tangent_basis

    @staticmethod
    def _flat(M):
        return np.concatenate([M.real.ravel(), M.imag.ravel()])

    def f(self, p):
        z = complexify_vector(p)
        return self._flat(np.outer(z, z.conj()))

    def df(self, p, v):
        v = np.asarray(v, dtype=float)
        if v.ndim == 2:
            return self._columns(self.df, p, v)
        z = complexify_vector(p)
        w = complexify_vector(v)
        return self._flat(np.outer(w, z.conj()) + np.outer(z, w.conj()))

    def fiber_direction(self, p):
        """The vertical direction ``i z`` (realified)."""
        return realify_vector(1j * complexify_vector(p))


class GlToSpd(Submersion):
    """``GL(R^n) -> SPD``, ``T -> T^T T``; fibres are the cosets ``O(n) T``."""

    def __init__(self, n, max_cond=1e6):
        self.n = n
        self.max_cond = max_cond
        self.ambient_dim = n * n
        self.manifold_dim = n * n
        self.target_dim = n * (n + 1) // 2

    def _mat(self, p):
        return np.asarray(p, dtype=float).reshape(self.n, self.n)

    def membership_residual(self, p):
        cond = np.linalg.cond(self._mat(p))
        return 0.0 if np.isfinite(cond) and cond < 1e12 else np.inf

    def in_trust_region(self, p):
        return np.linalg.cond(self._mat(p)) <= self.max_cond

    def f(self, p):
        T = self._mat(p)
        return (T.T @ T).ravel()

    def df(self, p, v):
        v = np.asarray(v, dtype=float)
        if v.ndim == 2:
            return self._columns(self.df, p, v)
        T = self._mat(p)
        A = self._mat(v)
        return (A.T @ T + T.T @ A).ravel()


class CoordinateProjection(Submersion):
    """``R^m -> R^k`` keeping the first k coordinates; its connection is flat."""

    def __init__(self, m, k):
        self.ambient_dim = m
        self.manifold_dim = m
        self.target_dim = k

    def f(self, p):
        return np.asarray(p, dtype=float)[: self.target_dim].copy()

    def df(self, p, v):
        v = np.asarray(v, dtype=float)
        return v[: self.target_dim].copy()


@dataclass(frozen=True)
class Connection:
    """Horizontal spaces = ambient-Euclidean orthogonal complements of the fibres."""

    submersion: Submersion
    differential: str = "exact"
    metric: str = "AmbientEuclidean"

    def jacobian(self, p, basis):
        if self.differential == "fd":
            return self.submersion.df_fd(p, basis)
        return self.submersion.df(p, basis)

    def split(self, p):
        """Orthonormal horizontal and vertical bases (columns) at `p`."""
        S = self.submersion
        T = S.tangent_basis(p)
        J = np.atleast_2d(self.jacobian(p, T))
        if J.shape[0] != T.shape[1] and J.ndim == 2 and J.shape[1] != T.shape[1]:
            J = J.T
        _, s, wh = np.linalg.svd(J)
        r = S.target_dim
        if r and (len(s) < r or s[r - 1] <= RANK_TOL * s[0]):
            raise MatgeomError("differential is not surjective here")
        if len(s) > r and s[r] > RANK_TOL * max(s[0], 1.0):
            raise MatgeomError("differential has unexpected rank")
        W = wh.T
        return T @ W[:, :r], T @ W[:, r:]


def _connection(C):
    return C if isinstance(C, Connection) else Connection(C)


def vertical_space(C, p):
    """Orthonormal basis (columns) of the kernel of ``df_p`` inside ``T_p M``."""
    C = _connection(C)
    p = C.submersion.check_point(p)
    return C.split(p)[1]


def horizontal_space(C, p):
    C = _connection(C)
    p = C.submersion.check_point(p)
    return C.split(p)[0]


def lift_velocity(C, p, u):
    """Horizontal vector at `p` mapped by ``df_p`` onto the target vector `u`.

    Least squares, so a `u` not tangent to the target is replaced by its
    orthogonal projection onto the tangent space.
    """
    C = _connection(C)
    H, _ = C.split(p)
    J = C.jacobian(p, H)
    if J.ndim == 1:
        J = J[:, None]
    c, *_ = np.linalg.lstsq(J, np.asarray(u, dtype=float), rcond=None)
    return H @ c


def _derivative(alpha, t, h=1e-3):
    """Fourth-order central difference."""
    return (
        -alpha(t + 2 * h) + 8 * alpha(t + h) - 8 * alpha(t - h) + alpha(t - 2 * h)
    ) / (12 * h)


class LiftedPath(NamedTuple):
    times: np.ndarray
    points: np.ndarray
    velocities: np.ndarray

    @property
    def end(self):
        return self.points[-1]


def horizontal_lift(
    C,
    alpha: Callable[[float], np.ndarray],
    p0,
    t0: float = 0.0,
    t1: float = 1.0,
    steps: int = 100,
    alpha_dot: Optional[Callable[[float], np.ndarray]] = None,
):
    """Lift the target path `alpha` to a horizontal path starting at `p0`.

    Integrates ``beta' = (df_beta restricted to H_beta)^-1 alpha'(t)`` with
    RK4 on a uniform grid, reprojecting onto the manifold after each step.
    `alpha` returns embedded target points; its derivative is taken by a
    fourth-order difference unless `alpha_dot` is given.
    """
    C = _connection(C)
    S = C.submersion
    p0 = S.check_point(p0)
    a0 = np.asarray(alpha(t0), dtype=float)
    if np.linalg.norm(S.f(p0) - a0) > MEMBERSHIP_TOL * max(1.0, np.linalg.norm(a0)):
        raise OffManifoldError("starting point is not on the fibre over alpha(t0)")
    if steps < 1:
        raise ValueError("need at least one step")
    adot = alpha_dot if alpha_dot is not None else (lambda t: _derivative(alpha, t))

    def rhs(t, p):
        if not S.in_trust_region(p):
            raise TrustRegionError("lifted path left the trust region")
        return lift_velocity(C, p, adot(t))

    times = np.linspace(t0, t1, steps + 1)
    h = (t1 - t0) / steps
    points = [p0]
    velocities = [rhs(t0, p0)]
    p = p0
    for t in times[:-1]:
        k1 = velocities[-1]
        k2 = rhs(t + h / 2, p + h / 2 * k1)
        k3 = rhs(t + h / 2, p + h / 2 * k2)
        k4 = rhs(t + h, p + h * k3)
        p = S.project(p + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4))
        points.append(p)
        velocities.append(rhs(t + h, p))
    return LiftedPath(times, np.array(points), np.array(velocities))


def reversed_path(alpha, t0, t1):
    """``t -> alpha(t0 + t1 - t)``: the same path run backwards over [t0, t1]."""
    return lambda t: alpha(t0 + t1 - t)


class FiberTransport(NamedTuple):
    sources: np.ndarray
    targets: np.ndarray


def fiber_transport(C, alpha, samples, t0=0.0, t1=1.0, steps=100):
    """Carry fibre points over ``alpha(t0)`` around the closed loop `alpha`."""
    C = _connection(C)
    S = C.submersion
    start, end = np.asarray(alpha(t0)), np.asarray(alpha(t1))
    if np.linalg.norm(start - end) > MEMBERSHIP_TOL * max(1.0, np.linalg.norm(start)):
        raise MatgeomError("alpha is not a closed loop")
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    targets = [horizontal_lift(C, alpha, s, t0, t1, steps).end for s in samples]
    return FiberTransport(samples, np.array(targets))


def curvature_numeric(C, p, u1, u2, h=1e-4, stability=1e-3):
    """Vertical part of the bracket of the horizontal lifts of `u1`, `u2`.

    The target vectors are extended as constants in the embedding, lifted
    horizontally near `p` (points off the manifold are first projected
    back), and the bracket is taken with central differences of step `h`.
    The result is recomputed at ``h / 2``; a relative change above
    `stability` raises :class:`ConvergenceError`. Returns the ``h / 2``
    value as an ambient vector.
    """
    C = _connection(C)
    S = C.submersion
    p = S.check_point(p)
    H, V = C.split(p)
    J = C.jacobian(p, H)
    if J.ndim == 1:
        J = J[:, None]
    for u in (u1, u2):
        u = np.asarray(u, dtype=float)
        c, *_ = np.linalg.lstsq(J, u, rcond=None)
        if np.linalg.norm(J @ c - u) > 1e-6 * max(np.linalg.norm(u), 1e-300):
            raise MatgeomError("u is not tangent to the target at f(p)")

    def field(u):
        return lambda q: lift_velocity(C, S.project(q), u)

    X1, X2 = field(u1), field(u2)

    def bracket(step):
        x1, x2 = X1(p), X2(p)
        d2 = (X2(p + step * x1) - X2(p - step * x1)) / (2 * step)
        d1 = (X1(p + step * x2) - X1(p - step * x2)) / (2 * step)
        b = d2 - d1
        return V @ (V.T @ b)

    coarse = bracket(h)
    fine = bracket(h / 2)
    floor = 1e-8 * np.linalg.norm(u1) * np.linalg.norm(u2)
    if np.linalg.norm(coarse - fine) > stability * np.linalg.norm(fine) + floor:
        raise ConvergenceError("curvature estimate is unstable under step halving")
    return fine


def holonomy_phase(z_start, z_end):
    """Phase ``theta`` with ``z_end = e^{i theta} z_start`` for realified unit vectors."""
    a = complexify_vector(z_start)
    b = complexify_vector(z_end)
    return float(np.angle(np.vdot(a, b)))
