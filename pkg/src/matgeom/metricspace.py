"""p-norms, their metrics, and distances between finite point sets and along paths.

For ``0 < p < 1`` the function ``||x||_p`` is not a norm, but
``||x - y||_p ** p`` is still a metric; :func:`dp_metric` uses that
variant. Everything here works on finite sets, where suprema and infima
are attained, so Hausdorff distances and diameters are plain max/min
computations.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .exceptions import MatgeomError, ShapeError

__all__ = [
    "p_norm",
    "dp_metric",
    "FinitePointSet",
    "SampledPath",
    "dist_point_set",
    "hausdorff",
    "diameter",
    "path_length",
    "lipschitz_estimate",
    "sup_metric",
]


def _check_p(p):
    p = float(p)
    if not p > 0:
        raise MatgeomError("p must be positive (or inf)")
    return p


def p_norm(x, p):
    """``(sum |x_j|^p)^(1/p)``, or ``max |x_j|`` for ``p = inf``."""
    p = _check_p(p)
    a = np.abs(np.asarray(x)).ravel()
    if a.size == 0:
        return 0.0
    if np.isinf(p):
        return float(a.max())
    # scale by the max entry to avoid overflow for large p
    m = a.max()
    if m == 0.0:
        return 0.0
    return float(m * np.sum((a / m) ** p) ** (1.0 / p))


def dp_metric(x, y, p):
    """``||x - y||_p`` for ``p >= 1`` and ``||x - y||_p ** p`` for ``0 < p < 1``."""
    p = _check_p(p)
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise ShapeError("points of different dimension")
    if p >= 1:
        return p_norm(x - y, p)
    return float(np.sum(np.abs(x - y) ** p))


def _pairwise(X, Y, p):
    D = X[:, None, :] - Y[None, :, :]
    A = np.abs(D)
    if np.isinf(p):
        return A.max(axis=2, initial=0.0)
    if p >= 1:
        m = A.max(axis=2, initial=0.0)
        safe = np.where(m > 0, m, 1.0)
        return m * np.sum((A / safe[..., None]) ** p, axis=2) ** (1.0 / p)
    return np.sum(A**p, axis=2)


@dataclass(frozen=True)
class FinitePointSet:
    """A nonempty finite subset of R^n (or C^n) with the d_p metric."""

    points: np.ndarray
    p: float = 2.0

    def __post_init__(self):
        pts = np.asarray(self.points)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ShapeError("need a nonempty list of points of common dimension")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "p", _check_p(self.p))

    @property
    def dim(self):
        return self.points.shape[1]


def dist_point_set(x, A):
    """``min_{y in A} d(x, y)``."""
    x = np.atleast_1d(np.asarray(x))
    if x.shape != (A.dim,):
        raise ShapeError("point and set dimensions differ")
    return float(_pairwise(x[None, :], A.points, A.p).min())


def hausdorff(A, B):
    """Largest distance from a point of either set to the other set."""
    if A.p != B.p:
        raise MatgeomError("sets carry different metrics")
    if A.dim != B.dim:
        raise ShapeError("sets of different dimension")
    D = _pairwise(A.points, B.points, A.p)
    return float(max(D.min(axis=1).max(), D.min(axis=0).max()))


def diameter(A):
    return float(_pairwise(A.points, A.points, A.p).max())


@dataclass(frozen=True)
class SampledPath:
    """Samples ``points[j] = path(times[j])`` on a strictly increasing grid."""

    times: np.ndarray
    points: np.ndarray
    p: float = 2.0

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        pts = np.asarray(self.points)
        if pts.ndim == 1:
            pts = pts[:, None]
        if t.ndim != 1 or pts.shape[0] != t.shape[0]:
            raise ShapeError("times and points have different lengths")
        if np.any(np.diff(t) <= 0):
            raise MatgeomError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "p", _check_p(self.p))


def _partition_sum(points, p):
    steps = points[1:] - points[:-1]
    return float(_pairwise(steps, np.zeros((1, steps.shape[1]), steps.dtype), p).sum())


def path_length(P, refine: Optional[Callable[[float], np.ndarray]] = None, tol=1e-8, max_depth=24):
    """Length of a sampled path.

    Without `refine` this is the partition sum over the given samples, a
    lower bound for the true length. With a sampler ``t -> point``, the
    partition is halved repeatedly until successive sums differ by at most
    `tol`; returns ``(length, depth)``.
    """
    if P.times.shape[0] < 2:
        raise MatgeomError("need at least two samples")
    if refine is None:
        return _partition_sum(P.points, P.p)
    if not tol > 0:
        raise MatgeomError("tol must be positive")
    times, points = P.times, P.points
    current = _partition_sum(points, P.p)
    for depth in range(1, max_depth + 1):
        mids = (times[1:] + times[:-1]) / 2
        new = np.array([np.atleast_1d(refine(t)) for t in mids])
        merged = np.empty((2 * len(times) - 1, points.shape[1]), dtype=np.result_type(points, new))
        merged[0::2] = points
        merged[1::2] = new
        grid = np.empty(2 * len(times) - 1)
        grid[0::2] = times
        grid[1::2] = mids
        times, points = grid, merged
        nxt = _partition_sum(points, P.p)
        if abs(nxt - current) <= tol:
            return nxt, depth
        current = nxt
    raise MatgeomError("path length did not converge; the path may not be rectifiable")


def lipschitz_estimate(samples, dom_p=2.0, ran_p=2.0):
    """Largest ratio ``d(f x_i, f x_j) / d(x_i, x_j)`` over sample pairs.

    This is a lower bound for the Lipschitz constant of the sampled map.
    """
    xs = np.array([np.atleast_1d(np.asarray(x)) for x, _ in samples])
    fs = np.array([np.atleast_1d(np.asarray(fx)) for _, fx in samples])
    if len(xs) < 2:
        raise MatgeomError("need at least two samples")
    dx = _pairwise(xs, xs, _check_p(dom_p))
    df = _pairwise(fs, fs, _check_p(ran_p))
    iu = np.triu_indices(len(xs), 1)
    if np.any(dx[iu] == 0):
        raise MatgeomError("duplicate domain points")
    return float(np.max(df[iu] / dx[iu]))


def sup_metric(f_samples, g_samples, p=2.0):
    """Finite-sample supremum metric between two maps sampled at the same points."""
    F = np.asarray(f_samples)
    G = np.asarray(g_samples)
    if F.shape != G.shape:
        raise ShapeError("sample arrays differ in shape")
    if F.ndim == 1:
        F, G = F[:, None], G[:, None]
    return float(max(dp_metric(a, b, p) for a, b in zip(F, G)))
