"""
Geodesics on matrix groups and the SPD quotient
===============================================

With the metric tr(T^-1 A T^-1 B), one-parameter subgroups are
geodesics. On positive definite matrices the geodesic between P1 and
P2 passes through their geometric mean.
"""
import numpy as np

from matgeom import manifolds
from matgeom.sampling import random_invertible, random_orthogonal

rng = np.random.default_rng(1)

# The metric is indefinite: positive on symmetric directions at I,
# negative on antisymmetric ones.
I = np.eye(2)
print("<S, S> for S = diag(1, -1):", manifolds.metric_gl(I, np.diag([1.0, -1.0]), np.diag([1.0, -1.0])))
J = np.array([[0.0, 1.0], [-1.0, 0.0]])
print("<J, J> for J antisymmetric:", manifolds.metric_gl(I, J, J))

# A trace-free direction keeps the determinant at 1
A = rng.standard_normal((3, 3))
A -= np.trace(A) / 3 * np.eye(3)
Y = manifolds.GroupPoint(np.eye(3), "SL")
for t in (-2.0, 0.5, 2.0):
    print(f"t={t:+.1f}: det =", np.linalg.det(manifolds.geodesic(Y, A, t).value))

#############################################################################
# SPD geodesic from diag(1, 1) to diag(4, 9); its midpoint is diag(2, 3).

P1, P2 = np.eye(2), np.diag([4.0, 9.0])
S = manifolds.spd_direction(P1, P2)
for t in np.linspace(0, 1, 5):
    print(f"t={t:.2f}:", np.round(np.diag(manifolds.geodesic_spd(P1, S, t)), 6))

#############################################################################
# Polar decomposition T = R P, and T -> T^T T as a representative of O(n) T.

T = random_invertible(rng, 3)
R, P = manifolds.polar_decompose(T)
print("|RP - T| =", np.linalg.norm(R @ P - T))
Q = random_orthogonal(rng, 3)
q1 = manifolds.quotient_representative(T)
q2 = manifolds.quotient_representative(Q @ T)
print("representative changes by", np.linalg.norm(q1 - q2), "under T -> QT")
