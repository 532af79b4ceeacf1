import math

import numpy as np
import pytest

import oracles
from matrixgeom.decomp import nearest_orthogonal
from matrixgeom.exceptions import ContractError, DimensionError
from matrixgeom.linalg import rank_of
from matrixgeom.sphere import (
    GeodesicArc,
    StratumLabel,
    angular_distance,
    classify_stratum,
    geodesic_point,
    grad_det_sphere,
    m4_normal_geodesic,
    m4_point,
    m5_ray,
    to_sphere,
    wedge_norm,
)

S = math.sqrt(1.5)
E1 = np.array([1.0, 0.0, 0.0])
M5_BASE = np.diag([S, S, 0.0])
M4_BASE = np.diag([math.sqrt(3.0), 0.0, 0.0])


def unit(rng, n):
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)


def test_to_sphere_examples():
    np.testing.assert_array_equal(to_sphere(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(to_sphere(np.diag([2.0, 0.0, 0.0])), M4_BASE, rtol=1e-15)
    with pytest.raises(ContractError):
        to_sphere(np.zeros((2, 2)))


def test_angular_distance_constants():
    I = np.eye(3)
    assert angular_distance(I, I) == 0.0
    d = angular_distance(I, M4_BASE)
    assert d == pytest.approx(math.acos(1 / math.sqrt(3)), abs=1e-15)
    assert d == pytest.approx(0.95532, abs=5e-6)
    assert round(d / math.pi, 3) == 0.304
    assert angular_distance(M5_BASE, M4_BASE) == pytest.approx(math.pi / 4, abs=1e-15)


def test_angular_distance_validates():
    with pytest.raises(ContractError):
        angular_distance(np.eye(3), 2 * np.eye(3))
    with pytest.raises(DimensionError):
        angular_distance(np.eye(2), np.eye(3))


def test_geodesic_point_start_and_chord():
    arc = GeodesicArc.between(np.eye(3), M4_BASE)
    np.testing.assert_array_equal(geodesic_point(arc, 0.0), np.eye(3))
    assert arc.length == pytest.approx(math.acos(1 / math.sqrt(3)))
    np.testing.assert_allclose(geodesic_point(arc, arc.length), M4_BASE, atol=1e-10)
    for t in np.linspace(0.0, arc.length, 11):
        assert np.linalg.norm(geodesic_point(arc, t)) == pytest.approx(math.sqrt(3.0), rel=1e-14)


def test_geodesic_ray_reaches_rank_one():
    start = m5_ray(1.0, 0.0, 0.0)
    end = m5_ray(1.0, 0.0, math.pi / 4)
    arc = GeodesicArc.between(start, end)
    P = geodesic_point(arc, math.pi / 4)
    expected = to_sphere(np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 0.0]]) / math.sqrt(2))
    np.testing.assert_allclose(P, expected, atol=1e-12)
    assert rank_of(P) == 1


def test_geodesic_point_rejects_bad_arcs():
    bad_tangent = GeodesicArc(np.eye(3), np.eye(3), 1.0)
    with pytest.raises(ContractError):
        geodesic_point(bad_tangent, 0.5)
    short = GeodesicArc(np.eye(3), np.eye(3) * 2, 1.0)
    with pytest.raises(ContractError):
        geodesic_point(short, 0.5)
    arc = GeodesicArc.between(np.eye(3), M4_BASE)
    with pytest.raises(ContractError):
        geodesic_point(arc, arc.length + 0.1)
    with pytest.raises(ContractError):
        GeodesicArc.between(np.eye(3), np.eye(3))


def test_grad_det_vanishes_on_so3(rng):
    np.testing.assert_allclose(grad_det_sphere(np.eye(3)), 0.0, atol=1e-12)
    for Q in oracles.haar_orthogonal(rng, 3, 100):
        assert np.max(np.abs(grad_det_sphere(Q))) <= 1e-10


def test_grad_det_diagonal_at_diagonal_points(rng):
    for _ in range(50):
        D = to_sphere(np.diag(rng.standard_normal(3)))
        G = grad_det_sphere(D)
        assert np.max(np.abs(G - np.diag(np.diag(G)))) <= 1e-12


def test_grad_det_equivariant_under_conjugation(rng):
    for _ in range(50):
        D = to_sphere(np.diag(rng.standard_normal(3)))
        U = oracles.haar_rotation(rng, 3, 1)[0]
        lhs = grad_det_sphere(U @ D @ U.T)
        assert np.max(np.abs(lhs - U @ grad_det_sphere(D) @ U.T)) <= 1e-10


def test_grad_det_tangent_and_nonzero_on_rank_two(rng):
    for _ in range(50):
        A = to_sphere(oracles.random_rank_r(rng, 3, 3, 2, 1)[0])
        G = grad_det_sphere(A)
        assert abs(np.sum(G * A)) <= 1e-12
        assert np.linalg.norm(G) > 1e-8


def test_wedge_norm_examples():
    assert wedge_norm(M5_BASE) == pytest.approx(1.5, abs=1e-15)
    assert wedge_norm(M4_BASE) == 0.0
    assert wedge_norm(np.eye(3)) == pytest.approx(math.sqrt(3.0), abs=1e-15)
    assert wedge_norm([[1.0, 2.0], [3.0, 4.0]]) == pytest.approx(2.0)
    with pytest.raises(DimensionError):
        wedge_norm(np.eye(4))


def test_wedge_norm_two_sided_invariance(rng):
    A = rng.standard_normal((3, 3))
    U, V = oracles.haar_orthogonal(rng, 3, 2)
    assert wedge_norm(U @ A @ V.T) == pytest.approx(wedge_norm(A), rel=1e-12)


def test_m4_point():
    np.testing.assert_allclose(m4_point(E1, E1), M4_BASE, rtol=1e-15)
    x = np.array([0.6, 0.8, 0.0])
    y = np.array([0.0, 0.6, -0.8])
    np.testing.assert_array_equal(m4_point(x, y), m4_point(-x, -y))
    with pytest.raises(ContractError):
        m4_point(2 * E1, E1)


def test_m5_ray_endpoints():
    np.testing.assert_allclose(m5_ray(1.0, 0.0, 0.0), M5_BASE, rtol=1e-15)
    end = m5_ray(1.0, 0.0, math.pi / 4)
    np.testing.assert_allclose(end, to_sphere(np.array([[1.0, 1, 0], [1, 1, 0], [0, 0, 0]])), atol=1e-15)
    assert rank_of(end) == 1


def test_m5_ray_is_eighth_circle(rng):
    for _ in range(20):
        phi = rng.uniform(0, 2 * math.pi)
        a, b = math.cos(phi), math.sin(phi)
        for t in np.linspace(0.0, math.pi / 4, 20):
            assert np.linalg.norm(m5_ray(a, b, t)) == pytest.approx(math.sqrt(3.0), rel=1e-14)
        assert angular_distance(m5_ray(a, b, 0.0), m5_ray(a, b, math.pi / 4)) == pytest.approx(
            math.pi / 4, abs=1e-10
        )
        assert rank_of(m5_ray(a, b, math.pi / 4 - 1e-3)) == 2


def test_m5_ray_endpoints_distinct():
    phis = 2 * math.pi * np.arange(64) / 64
    ends = np.array([m5_ray(math.cos(p), math.sin(p), math.pi / 4) for p in phis])
    gaps = [np.max(np.abs(ends[i] - ends[j])) for i in range(64) for j in range(i + 1, 64)]
    assert min(gaps) > 1e-6


def test_m5_ray_validation():
    with pytest.raises(ContractError):
        m5_ray(1.0, 1.0, 0.1)
    with pytest.raises(ContractError):
        m5_ray(1.0, 0.0, 1.0)


def test_m4_normal_geodesic():
    np.testing.assert_allclose(m4_normal_geodesic(1.0, 0.0, 0.0, 0.0, 0.0), M4_BASE, atol=1e-15)
    h = 1 / math.sqrt(2)
    assert rank_of(m4_normal_geodesic(h, 0.0, 0.0, h, 0.1)) == 3
    assert rank_of(m4_normal_geodesic(1.0, 0.0, 0.0, 0.0, 0.1)) == 2
    with pytest.raises(ContractError):
        m4_normal_geodesic(1.0, 1.0, 0.0, 0.0, 0.1)


def test_classify_examples():
    assert classify_stratum(np.eye(3)) is StratumLabel.NONSINGULAR_POS
    assert classify_stratum(np.diag([-1.0, 1.0, 1.0])) is StratumLabel.NONSINGULAR_NEG
    assert classify_stratum(M5_BASE) is StratumLabel.M5_BEST_RANK2
    assert classify_stratum(M4_BASE) is StratumLabel.M4_RANK1
    assert classify_stratum(to_sphere(np.diag([2.0, 1.0, 0.0]))) is StratumLabel.RANK2_GENERIC
    with pytest.raises(DimensionError):
        classify_stratum(np.eye(2))


def test_classify_invariant_under_two_sided_action(rng):
    points = [M5_BASE, M4_BASE, to_sphere(np.diag([2.0, 1.0, 0.0])), np.eye(3), to_sphere(rng.standard_normal((3, 3)))]
    for A in points:
        label = classify_stratum(A)
        for U, V in oracles.haar_rotation(rng, 3, 40).reshape(20, 2, 3, 3):
            assert classify_stratum(U @ A @ V.T) is label


def test_det_bounded_on_sphere(rng):
    for _ in range(500):
        A = to_sphere(rng.standard_normal((3, 3)))
        assert abs(np.linalg.det(A)) <= 1 + 1e-12
    Q = oracles.haar_orthogonal(rng, 3, 1)[0]
    assert np.linalg.norm(nearest_orthogonal(Q) - Q) < 1e-4
