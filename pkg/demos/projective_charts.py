"""
Projective spaces, Grassmannians and charts
===========================================

Points of projective space are lines through the origin, stored by a
normalised representative. Subspaces are compared through projectors,
and a complement M gives a chart around L by graphs of linear maps.
"""
import numpy as np

from matgeom import projective as pj

rng = np.random.default_rng(3)

print("(i, 0) ->", pj.proj_from(np.array([1j, 0])).rep)

# RP^1: the two charts overlap with transition t -> 1/t
P = pj.affine_chart(1, np.array([2.0]))
print("chart 1 coordinate 2 seen from chart 0:", pj.chart_extract(0, P))

# a projective map sending one point to another
P, Q = pj.proj_from(rng.standard_normal(3)), pj.proj_from(rng.standard_normal(3))
A = pj.projective_map_between(P, Q)
print("A P = Q:", np.allclose(pj.apply_projective(A, P).rep, Q.rep))

#############################################################################
# G(2, 4): a graph chart of dimension k (n - k) = 4.

L = pj.grass_from([np.eye(4)[0], np.eye(4)[1]])
M = pj.annihilator(L)
X = rng.standard_normal((2, 2))
G = pj.graph_chart(L, M, X)
print("recovered chart coordinates:\n", pj.graph_coordinates(L, M, G))
print("annihilator twice returns L:", pj.grass_distance(pj.annihilator(M), L))

#############################################################################
# Homogeneous maps of the projective line compose with degrees multiplying.

f = pj.HomogeneousMapP1(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))  # z -> z^2
g = pj.HomogeneousMapP1(np.array([1.0, 2.0]), np.array([3.0, 1.0]))  # z -> (2z + 1)/(z + 3)
h = pj.compose(f, g)
z = 0.7
P = pj.affine_chart(1, np.array([z]))
print("degree", h.degree, "value", pj.chart_extract(1, pj.homogeneous_map_p1(h, P))[0],
      "expected", ((2 * z + 1) / (z + 3)) ** 2)
