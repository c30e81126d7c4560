"""
p-metrics, Hausdorff distance and path length
=============================================

For p >= 1 the p-norm gives a metric; for 0 < p < 1 the p-th power of
the p-"norm" does. Finite sets make the Hausdorff distance a max of mins,
and partition sums give lower bounds for path length.
"""
import numpy as np

from matgeom import metricspace as ms

x = np.array([3.0, -4.0, 1.0])
for p in (0.5, 1, 2, np.inf):
    print(f"p={p}: |x|_p = {ms.p_norm(x, p):.6f}, d_p(x, 0) = {ms.dp_metric(x, np.zeros(3), p):.6f}")

A = ms.FinitePointSet([[0.0, 0.0], [1.0, 0.0]])
B = ms.FinitePointSet([[0.0, 0.5], [3.0, 0.0]])
print("Hausdorff distance:", ms.hausdorff(A, B), "diameter of B:", ms.diameter(B))

#############################################################################
# Inscribed polygons approach the circumference from below.

for k in (4, 8, 12):
    th = np.linspace(0, 2 * np.pi, 2**k + 1)
    P = ms.SampledPath(th, np.column_stack([np.cos(th), np.sin(th)]))
    print(f"2^{k} samples: {ms.path_length(P):.10f}  (2 pi = {2 * np.pi:.10f})")

f = lambda t: np.array([np.cos(t), np.sin(t)])
th = np.linspace(0, 2 * np.pi, 5)
length, depth = ms.path_length(ms.SampledPath(th, np.array([f(t) for t in th])), refine=f)
print("refined length", length, "after", depth, "halvings")

rng = np.random.default_rng(4)
xs = rng.standard_normal((50, 2))
print("Lipschitz estimate of x -> 3x:", ms.lipschitz_estimate([(v, 3 * v) for v in xs]))
