"""Linear algebra and geometry of matrix groups.

Submodules: ``linalg`` (adjoints, norms, Gram-Schmidt), ``spectral``
(Jacobi eigensolver, characteristic polynomials), ``expmlog`` (matrix
exponential and logarithms), ``manifolds`` (matrix groups, metric,
geodesics, polar decomposition), ``lattices`` (lattices, tori, Hopf
manifolds), ``projective`` (projective spaces and Grassmannians),
``submersion`` (connections and horizontal lifts), ``metricspace``
(p-norms, Hausdorff distance, path length) and ``cli``.
"""
from . import exceptions, expmlog, lattices, linalg, manifolds, metricspace, projective, sampling, spectral, submersion
from .exceptions import *  # noqa: F401,F403
from .expmlog import expm, logm_spd, logm_special_orthogonal, logm_unitary, real_log_exists
from .linalg import adjoint, det, gram_schmidt, hs_norm, inner_product, op_norm
from .spectral import char_poly, eig_normal, eigh

__version__ = "0.1.0"
