"""
Horizontal lifts and holonomy on the Hopf fibration
===================================================

The Hopf map S^3 -> CP^1 has circle fibres. The connection given by
orthogonal complements lifts each base path uniquely, and a closed loop
moves the starting point along its fibre by a phase. For the loop
(1, r e^{2 pi i t}) that phase is -2 pi r^2 / (1 + r^2).
"""
import numpy as np

from matgeom import submersion as sm
from matgeom.linalg import realify_vector

S = sm.SphereToCP(1)


def loop(r):
    def z(t):
        v = np.array([1.0, r * np.exp(2j * np.pi * t)])
        return realify_vector(v / np.linalg.norm(v))

    return z, (lambda t: S.f(z(t)))


for r in (0.75, 0.5, 0.25, 0.1):
    z, alpha = loop(r)
    end = sm.horizontal_lift(S, alpha, z(0), steps=200).end
    phase = sm.holonomy_phase(z(0), end)
    print(f"r={r:4.2f}: phase {phase:+.8f}, closed form {-2 * np.pi * r * r / (1 + r * r):+.8f}")

#############################################################################
# RK4 error drops by about 2^4 = 16 per halving of the step.

z, alpha = loop(0.5)
ref = sm.horizontal_lift(S, alpha, z(0), steps=1280).end
prev = None
for n in (10, 20, 40, 80):
    err = np.linalg.norm(sm.horizontal_lift(S, alpha, z(0), steps=n).end - ref)
    print(f"steps={n:3d}: error {err:.3e}" + (f", ratio {prev / err:.1f}" if prev else ""))
    prev = err

#############################################################################
# In RP^2 the lift of a half great circle ends at the antipode.

R = sm.SphereToRP(2)
e1, e2 = np.eye(3)[:2]
beta = sm.horizontal_lift(R, lambda t: R.f(np.cos(np.pi * t) * e1 + np.sin(np.pi * t) * e2), e1)
print("RP^2 lift ends at", np.round(beta.end, 9))

#############################################################################
# Curvature: the vertical part of the bracket of two horizontal fields.

p = np.array([1.0, 0, 0, 0])
H = sm.horizontal_space(S, p)
u1, u2 = S.df(p, H[:, 0]), S.df(p, H[:, 1])
c = sm.curvature_numeric(S, p, u1, u2)
print("Hopf curvature norm:", np.linalg.norm(c))
F = sm.CoordinateProjection(2, 1)
print("flat projection curvature:", np.linalg.norm(sm.curvature_numeric(F, np.zeros(2), [1.0], [1.0])))
