"""
Lattices, tori and Hopf manifolds
=================================

A lattice is the image of Z^n under an invertible matrix. Its covolume
is |det|, two bases give the same lattice exactly when they differ by an
integer matrix of determinant +-1, and points of the torus R^n / L have
canonical representatives in the half-open cell of the basis.
"""
import numpy as np

from matgeom import lattices
from matgeom.lattices import Lattice
from matgeom.sampling import random_unimodular

rng = np.random.default_rng(2)

print("covolume of 2 pi Z^3:", lattices.covolume(Lattice.integer(3, 2 * np.pi)), "=", (2 * np.pi) ** 3)

B = np.array([[2.0, 1.0], [0.5, 1.5]])
U = random_unimodular(rng, 2)
print("unimodular change of basis:\n", U)
print("same lattice:", lattices.lattices_equal(Lattice(B), Lattice(B @ U)))
print("index-2 sublattice equal:", lattices.lattices_equal(Lattice(B), Lattice(B @ np.diag([2.0, 1.0]))))

# reduction to the torus
L = Lattice(B)
x = np.array([7.3, -4.1])
t = lattices.reduce_mod(L, x)
print("x =", x, "-> rep", t.rep, "cell coordinates", t.coords)

#############################################################################
# Gaussian-integer lattices are stored in R^2n.

G = Lattice.gaussian(np.array([[1 + 1j]]))
print("covolume of (1+i) Z[i]:", G.covolume)

#############################################################################
# Hopf manifold: orbits of a contraction, one representative per orbit.

A = 0.5 * np.eye(2)
for v in ([1.0, 0.0], [4.0, 0.0], [0.3, 0.1]):
    w, j = lattices.hopf_representative(A, np.array(v))
    print(v, "-> w =", w, "j =", j)
