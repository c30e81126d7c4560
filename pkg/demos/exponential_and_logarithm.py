"""
Exponentials, logarithms and the real-log obstruction
=====================================================

The exponential turns traces into determinants, and every invertible
complex matrix has a logarithm. Over the reals the story is different:
a negative eigenvalue of odd multiplicity blocks any real logarithm.
"""
import numpy as np

from matgeom import expmlog, linalg
from matgeom.sampling import random_with_op_norm

rng = np.random.default_rng(0)

# det(exp A) = exp(tr A) on a few random matrices
for n in (2, 4, 8):
    A = random_with_op_norm(rng, n, 2.5)
    lhs, rhs = expmlog.det_exp_identity(A)
    print(f"n={n}: det exp A = {lhs:.12g}, exp tr A = {rhs:.12g}")

# the Taylor/squaring bookkeeping of one exponential
r = expmlog.expm(10 * np.array([[0.0, 1.0], [-1.0, 0.0]]))
print("rotation by 10 rad:", r.scaling_squarings, "squarings,", r.taylor_terms, "terms")

#############################################################################
# Logarithms of SPD, unitary and rotation matrices stay in the right class.

P = np.diag([np.e, np.e**2])
print("log diag(e, e^2) =", np.diag(expmlog.logm_spd(P)))

theta = 2.0
R = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
print("log of rotation by 2 rad:\n", expmlog.logm_special_orthogonal(R))

#############################################################################
# diag(-1, -2) has no real logarithm, but -I does: it is a rotation by pi.

for B in (np.diag([-1.0, -2.0]), -np.eye(2), np.diag([-1.0, -1.0, 3.0])):
    rep = expmlog.real_log_exists(B)
    print(np.diag(B), "->", rep.exists_real, rep.obstruction.value)
    if rep.value is not None:
        err = linalg.hs_norm(expmlog.expm(rep.value).value - B)
        print("   exp(log B) - B has norm", f"{err:.2e}")
