import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matgeom import projective as pj
from matgeom.exceptions import (
    MatgeomError,
    NotInChartError,
    ResultantZeroError,
    ShapeError,
    SingularMatrixError,
)
from matgeom.sampling import random_invertible, random_matrix


def rand_vec(rng, n, cplx):
    v = rng.standard_normal(n)
    return v + 1j * rng.standard_normal(n) if cplx else v


def same(P, Q, tol=1e-10):
    return np.max(np.abs(P.rep - Q.rep)) <= tol


def test_proj_from_examples():
    v = np.array([3.0, -1.0, 2.0])
    assert np.array_equal(pj.proj_from(v).rep, pj.proj_from(2 * v).rep)
    assert np.array_equal(pj.proj_from(np.array([-1.0, 0])).rep, [1.0, 0])
    assert np.array_equal(pj.proj_from(np.array([1j, 0])).rep, [1.0, 0])
    with pytest.raises(MatgeomError):
        pj.proj_from(np.zeros(3))


def test_proj_from_normalisation(rng):
    for _ in range(100):
        cplx = bool(rng.integers(2))
        P = pj.proj_from(rand_vec(rng, 4, cplx))
        assert abs(np.linalg.norm(P.rep) - 1) <= 1e-12
        j = int(np.argmax(np.abs(P.rep)))
        assert P.rep[j].real > 0 and P.rep[j].imag == 0


def test_proj_from_power_of_two_scaling_is_exact(rng):
    for _ in range(50):
        v = rand_vec(rng, 3, True)
        for a in (2.0, -0.5, 1024.0):
            assert np.array_equal(pj.proj_from(v).rep, pj.proj_from(a * v).rep)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.1, 10), st.floats(0, 2 * np.pi))
def test_proj_from_scalar_invariance(seed, r, theta):
    v = rand_vec(np.random.default_rng(seed), 3, True)
    a = r * np.exp(1j * theta)
    assert same(pj.proj_from(v), pj.proj_from(a * v), 1e-12)


def test_affine_chart_examples():
    P = pj.affine_chart(2, np.zeros(2))
    assert np.array_equal(P.rep, [0.0, 0, 1])
    P = pj.affine_chart(1, np.array([1.0]))
    assert np.allclose(pj.chart_extract(1, P), [1.0], atol=1e-12)
    # transition between the two charts of RP^1 is t -> 1/t
    assert pj.chart_extract(0, pj.affine_chart(1, np.array([2.0])))[0] == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(NotInChartError):
        pj.chart_extract(0, pj.affine_chart(1, np.array([0.0])))


def test_chart_round_trip(rng):
    for _ in range(100):
        n = rng.integers(1, 5)
        x = rand_vec(rng, n, bool(rng.integers(2)))
        j = rng.integers(n + 1)
        back = pj.chart_extract(j, pj.affine_chart(j, x))
        assert np.max(np.abs(back - x)) <= 1e-12 * max(1, np.max(np.abs(x)))


def test_charts_cover(rng):
    for _ in range(200):
        n = rng.integers(1, 6)
        P = pj.proj_from(rand_vec(rng, n + 1, bool(rng.integers(2))))
        assert np.max(np.abs(P.rep)) >= 1 / np.sqrt(n + 1) - 1e-15


def test_apply_projective_examples(rng):
    P = pj.proj_from(rand_vec(rng, 3, False))
    assert same(pj.apply_projective(np.eye(3), P), P)
    assert same(pj.apply_projective(2 * np.eye(3), P), P, 1e-15)
    with pytest.raises(SingularMatrixError):
        pj.apply_projective(np.ones((3, 3)), P)
    with pytest.raises(ShapeError):
        pj.apply_projective(np.eye(2), P)


def test_functoriality_and_scalar_invariance(rng):
    for _ in range(300):
        n = rng.integers(2, 5)
        cplx = bool(rng.integers(2))
        A1 = random_invertible(rng, n, complex=cplx, max_cond=100)
        A2 = random_invertible(rng, n, complex=cplx, max_cond=100)
        P = pj.proj_from(rand_vec(rng, n, cplx))
        lhs = pj.apply_projective(A1, pj.apply_projective(A2, P))
        assert same(lhs, pj.apply_projective(A1 @ A2, P))
        alpha = (0.3 - 1.7j) if cplx else -2.5
        assert same(pj.apply_projective(alpha * A1, P), pj.apply_projective(A1, P))
        back = pj.apply_projective(np.linalg.inv(A1), pj.apply_projective(A1, P))
        assert same(back, P)


def test_projective_transitivity(rng):
    for _ in range(50):
        cplx = bool(rng.integers(2))
        P, Q = pj.proj_from(rand_vec(rng, 4, cplx)), pj.proj_from(rand_vec(rng, 4, cplx))
        A = pj.projective_map_between(P, Q)
        assert same(pj.apply_projective(A, P), Q)


def test_subspaces_map_to_subspaces(rng):
    for _ in range(50):
        A = random_invertible(rng, 4, max_cond=100)
        L = pj.grass_from(list(random_matrix(rng, 4, 2).T))
        image = pj.transform_grass(A, L)
        assert image.k == L.k
        c = rng.standard_normal(2)
        Q = pj.apply_projective(A, pj.proj_from(L.basis @ c))
        assert np.linalg.norm(image.projector @ Q.rep - Q.rep) <= 1e-10


def test_grass_examples(rng):
    e = np.eye(4)
    L = pj.grass_from([e[0], e[1]])
    assert np.allclose(L.projector, np.diag([1.0, 1, 0, 0]), atol=1e-15)
    M = pj.grass_from([e[0] + e[1], e[0] - 2 * e[1]])
    assert pj.grass_distance(L, M) <= 1e-9
    v = rand_vec(rng, 3, True)
    P = pj.proj_from(v)
    G = pj.grass_from([v])
    assert np.allclose(G.projector, np.outer(P.rep, P.rep.conj()), atol=1e-12)
    with pytest.raises(MatgeomError):
        pj.grass_from([e[0], 2 * e[0]])


def test_grass_projector_invariants(rng):
    for _ in range(50):
        n, k = 5, rng.integers(1, 5)
        L = pj.grass_from(list(random_matrix(rng, n, k, complex=True).T))
        P = L.projector
        assert np.max(np.abs(L.basis.conj().T @ L.basis - np.eye(k))) <= 1e-10
        assert np.linalg.norm(P @ P - P) <= 1e-9 and np.linalg.norm(P - P.conj().T) <= 1e-9


def test_graph_chart_examples():
    e = np.eye(2)
    L, M = pj.grass_from([e[0]]), pj.grass_from([e[1]])
    assert pj.grass_distance(pj.graph_chart(L, M, np.zeros((1, 1))), L) <= 1e-12
    G = pj.graph_chart(L, M, np.array([[0.7]]))
    assert pj.grass_distance(G, pj.grass_from([np.array([1.0, 0.7])])) <= 1e-12
    with pytest.raises(MatgeomError):
        pj.graph_chart(L, L, np.zeros((1, 1)))
    with pytest.raises(ShapeError):
        pj.graph_chart(L, M, np.zeros((2, 1)))


def test_graph_chart_parameter_count_and_injectivity(rng):
    for _ in range(100):
        n, k = 5, rng.integers(1, 5)
        L = pj.grass_from(list(random_matrix(rng, n, k).T))
        M = pj.annihilator(L)
        A1, A2 = random_matrix(rng, n - k, k), random_matrix(rng, n - k, k)
        assert A1.size == k * (n - k)
        G1, G2 = pj.graph_chart(L, M, A1), pj.graph_chart(L, M, A2)
        assert pj.grass_distance(G1, G2) > 1e-6
        assert np.allclose(pj.graph_coordinates(L, M, G1), A1, atol=1e-9)


def test_annihilator_examples(rng):
    e = np.eye(3)
    A = pj.annihilator(pj.grass_from([e[0]]))
    assert pj.grass_distance(A, pj.grass_from([e[1], e[2]])) <= 1e-12
    full = pj.annihilator(pj.grass_from(list(e)))
    assert full.k == 0 and full.basis.shape == (3, 0)
    for _ in range(50):
        n, k = 6, rng.integers(0, 7)
        L = pj.grass_from(list(random_matrix(rng, n, k, complex=True).T)) if k else pj.GrassPoint(np.zeros((n, 0)))
        Lp = pj.annihilator(L)
        assert Lp.k == n - k
        assert np.linalg.norm(L.projector + Lp.projector - np.eye(n)) <= 1e-10
        assert pj.grass_distance(pj.annihilator(Lp), L) <= 1e-9


def test_invertible_map_preserves_dimension(rng):
    for _ in range(30):
        L = pj.grass_from(list(random_matrix(rng, 5, 3).T))
        assert pj.transform_grass(random_invertible(rng, 5), L).k == 3


def test_homogeneous_examples():
    ident = pj.HomogeneousMapP1(np.array([0.0, 1]), np.array([1.0, 0]))
    # chart 1 coordinate z = w1 / w2
    P = pj.affine_chart(1, np.array([1.0]))
    assert pj.chart_extract(1, pj.homogeneous_map_p1(ident, P))[0] == pytest.approx(1.0, abs=1e-12)
    sq = pj.HomogeneousMapP1(np.array([0.0, 0, 1]), np.array([1.0, 0, 0]))
    P = pj.affine_chart(1, np.array([3.0]))
    assert pj.chart_extract(1, pj.homogeneous_map_p1(sq, P))[0] == pytest.approx(9.0, rel=1e-12)
    with pytest.raises(ResultantZeroError):
        # both vanish at w1 = 0
        pj.HomogeneousMapP1(np.array([0.0, 1]), np.array([0.0, 2]))


def test_mobius_degree_one(rng):
    a, b, c, d = 2.0, -1.0, 0.5, 3.0
    f = pj.HomogeneousMapP1(np.array([b, a]), np.array([d, c]))
    for z in rng.standard_normal(5):
        P = pj.affine_chart(1, np.array([z]))
        got = pj.chart_extract(1, pj.homogeneous_map_p1(f, P))[0]
        assert got == pytest.approx((a * z + b) / (c * z + d), rel=1e-12)


def test_sylvester_resultant_oracle(rng):
    # resultant of prod (w1 - r_i w2) and prod (w1 - s_j w2) is prod (r_i - s_j)
    for _ in range(20):
        r, s = rng.standard_normal(3), rng.standard_normal(3)
        f = np.polynomial.polynomial.polyfromroots(r)
        g = np.polynomial.polynomial.polyfromroots(s)
        oracle = np.prod(r[:, None] - s[None, :])
        assert abs(pj.sylvester_resultant(f, g)) == pytest.approx(abs(oracle), rel=1e-9)


def test_common_zero_gap_agrees_with_resultant(rng):
    for _ in range(50):
        r = rng.standard_normal(3)
        s = np.r_[r[0], rng.standard_normal(2)]
        f = np.polynomial.polynomial.polyfromroots(r)
        g = np.polynomial.polynomial.polyfromroots(s)
        assert abs(pj.sylvester_resultant(f, g)) <= 1e-12 * np.linalg.norm(f) ** 3 * np.linalg.norm(g) ** 3
        assert pj.common_zero_gap(f, g) <= 1e-10
        with pytest.raises(ResultantZeroError):
            pj.HomogeneousMapP1(f, g)
    # common zero at infinity: both forms lack the top coefficient
    assert pj.common_zero_gap(np.array([1.0, 2, 0]), np.array([3.0, 1, 0])) == 0.0
    assert pj.common_zero_gap(np.array([1.0, 0]), np.array([0.0, 1])) == pytest.approx(1.0)


def random_map(rng, a):
    while True:
        try:
            return pj.HomogeneousMapP1(rng.standard_normal(a + 1), rng.standard_normal(a + 1))
        except ResultantZeroError:
            continue


def test_composition_degree_and_pointwise(rng):
    for _ in range(50):
        a, b = rng.integers(1, 4), rng.integers(1, 4)
        f, g = random_map(rng, a), random_map(rng, b)
        h = pj.compose(f, g)
        assert h.degree == a * b
        for _ in range(5):
            P = pj.proj_from(rng.standard_normal(2))
            lhs = pj.homogeneous_map_p1(h, P)
            rhs = pj.homogeneous_map_p1(f, pj.homogeneous_map_p1(g, P))
            assert pj.proj_distance(lhs, rhs) <= 1e-9
    f, g = random_map(rng, 2), random_map(rng, 3)
    assert pj.compose(f, g).degree == 6


def test_real_linear_normal_form(rng):
    theta, mu = pj.normalize_real_linear_c1(2 + 1j, 0.5j)
    z = 0.3 - 0.8j
    assert theta * (z + mu * np.conj(z)) == pytest.approx((2 + 1j) * z + 0.5j * np.conj(z))
    assert abs(mu) < 1
    with pytest.raises(MatgeomError):
        pj.normalize_real_linear_c1(1.0, 1.0)


def test_real_linear_matrix_and_majorization(rng):
    from matgeom.linalg import realify
    M = random_matrix(rng, 2, complex=True)
    N = 0.1 * random_matrix(rng, 2, complex=True) * np.min(np.linalg.svd(M)[1]) / np.linalg.norm(np.ones((2, 2)))
    z = rand_vec(rng, 2, True)
    T = pj.real_linear_matrix(M, N)
    w = M @ z + np.conj(N @ z)
    x = np.column_stack([z.real, z.imag]).ravel()
    assert np.allclose(T @ x, np.column_stack([w.real, w.imag]).ravel())
    assert pj.majorization_holds(M, N, rng)
    assert abs(np.linalg.det(T)) > 0
    assert not pj.majorization_holds(N, M, rng)
