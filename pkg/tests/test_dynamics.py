"""Midpoint-map dynamics: quotient orbits, attractors, and convexification."""

from __future__ import annotations

import math

import numpy as np
import pytest

from dedal import (
    Polygon,
    attractor_index,
    basis_vector,
    center,
    centroid,
    class_distance,
    convexification_ensemble,
    convexification_index,
    cycle_scalar,
    decay_report,
    develop,
    eigenvalue,
    is_convex,
    iterate,
    project_class,
    verify_n_periodicity,
    vertex_distance,
)

from conftest import (
    polygon_from_coeffs,
    random_affinely_regular,
    random_centered,
    random_polygon,
    random_valid_polygon,
)


def test_iterate_eigenvector_trace():
    x1 = basis_vector(6, 1)
    trace = iterate(x1, 3)
    lam = eigenvalue(6, 1)
    for m, poly in enumerate(trace.polygons):
        expected = Polygon(lam**m * v for v in x1.vertices)
        assert vertex_distance(poly, expected) < 1e-12
    base = trace.classes[0]
    for cls in trace.classes:
        assert class_distance(cls, base) < 1e-12
    assert trace.steps == 3
    assert len(trace.polygons) == len(trace.classes) == 4


def test_iterate_constant_polygon():
    p = Polygon([1 + 1j] * 5)
    trace = iterate(p, 4)
    assert all(poly.vertices == p.vertices for poly in trace.polygons)
    assert all(cls is None for cls in trace.classes)


def test_iterate_contracts_centered_polygons():
    rng = np.random.default_rng(50)
    for _ in range(10):
        n = int(rng.integers(3, 9))
        q = random_centered(rng, n)
        trace = iterate(q, 50)
        initial = max(abs(v) for v in q.vertices)
        final = max(abs(v) for v in trace.polygons[50].vertices)
        assert final < 0.999**50 * initial


def test_iterate_classes_match_raw_polygons():
    rng = np.random.default_rng(51)
    for _ in range(5):
        q = random_centered(rng, 7)
        trace = iterate(q, 12)
        for poly, cls in zip(trace.polygons, trace.classes):
            assert class_distance(project_class(poly), cls) < 1e-9


def test_iterate_segment_collapses_to_none():
    seg = basis_vector(4, 2)
    trace = iterate(seg, 3)
    assert trace.classes[0] is not None
    assert trace.classes[1] is None and trace.classes[2] is None
    assert all(v == 0 for v in trace.polygons[1].vertices)


def test_attractor_index_examples():
    assert attractor_index(polygon_from_coeffs(5, {1: 1.0, 2: 0.5})) == 1
    assert attractor_index(polygon_from_coeffs(7, {2: 1.0, 3: 1.0})) == 2
    assert attractor_index(polygon_from_coeffs(7, {3: 1.0})) == 3
    with pytest.raises(ValueError):
        attractor_index(basis_vector(4, 2))
    with pytest.raises(ValueError):
        attractor_index(Polygon([5, 5, 5]))


def test_decay_report_golden_rate():
    p = polygon_from_coeffs(5, {1: 1.0, 2: 1.0})
    rep = decay_report(p, 40)
    assert rep.j == 1
    golden = 2 * math.cos(2 * math.pi / 5) / (2 * math.cos(math.pi / 5))
    assert abs(rep.predicted_rate - golden) < 1e-12
    assert abs(rep.predicted_rate - 0.381966011250105) < 1e-12
    assert abs(rep.fitted_rate - rep.predicted_rate) / rep.predicted_rate < 0.05


def test_decay_report_affinely_regular_input():
    rng = np.random.default_rng(52)
    rep = decay_report(random_affinely_regular(rng, 6, 1), 20)
    assert rep.predicted_rate == 0.0
    assert all(d <= 1e-10 for d in rep.distances)
    assert rep.fitted_rate == 0.0


def test_decay_report_fit_matches_prediction():
    rng = np.random.default_rng(53)
    for n in range(5, 9):
        for _ in range(10):
            q = random_polygon(rng, n)
            rep = decay_report(q, 40)
            assert 0.0 < rep.predicted_rate < 1.0
            assert (
                abs(rep.fitted_rate - rep.predicted_rate) / rep.predicted_rate < 0.05
            )
            # distances decay below 1e-3 and stay monotone afterwards
            below = [i for i, d in enumerate(rep.distances) if d < 1e-3]
            assert below
            tail = rep.distances[below[0]:]
            assert all(b <= a * (1 + 1e-12) for a, b in zip(tail, tail[1:]))


def test_decay_report_requires_enough_steps():
    with pytest.raises(ValueError):
        decay_report(polygon_from_coeffs(5, {1: 1, 2: 1}), 5)


def _distance_to_band(cls, indices: set[int]) -> float:
    u = cls.as_array()
    n = cls.n
    keep = np.array([i in indices for i in range(1, n)])
    k = float(np.linalg.norm(u[keep]))
    f = float(np.linalg.norm(u))
    return math.sqrt(max(0.0, 2 - 2 * k / f))


def test_basin_correctness():
    rng = np.random.default_rng(54)
    for _ in range(10):
        q = polygon_from_coeffs(
            7,
            {
                2: rng.normal() + 1j * rng.normal() + 2,
                3: rng.normal() + 1j * rng.normal(),
                4: rng.normal() + 1j * rng.normal(),
                5: rng.normal() + 1j * rng.normal() + 2,
            },
        )
        assert attractor_index(q) == 2
        trace = iterate(q, 30)
        final = trace.classes[30]
        assert _distance_to_band(final, {2, 5}) < 1e-6
        assert _distance_to_band(final, {1, 6}) > 1.0


def test_cycle_scalar_values():
    assert abs(cycle_scalar(3, 1) + 0.125) < 1e-15
    assert abs(cycle_scalar(4, 1) + 0.25) < 1e-15
    for n in range(3, 13):
        for j in range(1, n):
            if n % 2 == 0 and j == n // 2:
                continue
            assert cycle_scalar(n, j) == cycle_scalar(n, n - j)
            assert cycle_scalar(n, j).imag == 0.0
    with pytest.raises(ValueError):
        cycle_scalar(6, 3)
    with pytest.raises(ValueError):
        cycle_scalar(5, 0)


def test_cycle_scalar_matches_iterated_map():
    for n in range(3, 9):
        for j in range(1, n):
            if n % 2 == 0 and j == n // 2:
                continue
            cur = basis_vector(n, j)
            for _ in range(n):
                cur = develop(cur)
            expected = Polygon(cycle_scalar(n, j) * v for v in basis_vector(n, j).vertices)
            assert vertex_distance(cur, expected) < 1e-10


def test_triangle_three_step_scalar():
    rng = np.random.default_rng(55)
    for _ in range(20):
        q = center(random_polygon(rng, 3))
        cur = q
        for _ in range(3):
            cur = develop(cur)
        expected = Polygon(-v / 8 for v in q.vertices)
        assert vertex_distance(cur, expected) < 1e-10


def test_verify_n_periodicity():
    rng = np.random.default_rng(56)
    for n in range(3, 9):
        for _ in range(100):
            q = random_affinely_regular(rng, n)
            assert verify_n_periodicity(q, 1e-8)
    with pytest.raises(ValueError):
        verify_n_periodicity(polygon_from_coeffs(5, {1: 1.0, 2: 1.0}))


def test_global_attraction():
    rng = np.random.default_rng(59)
    for n in range(5, 9):
        for _ in range(200):
            q = random_polygon(rng, n)
            rep = decay_report(q, 60)
            assert rep.distances[60] < 1e-6


def test_convexification_convex_input_is_zero():
    assert convexification_index(Polygon([0, 1, 1 + 1j, 1j]), 50) == 0


def test_convexification_star_pentagon_never():
    assert convexification_index(basis_vector(5, 2), 300) is None


def test_convexification_nonconvex_inputs():
    rng = np.random.default_rng(57)
    found = 0
    while found < 10:
        p = random_centered(rng, 5)
        if is_convex(p, 1e-9):
            continue
        m = convexification_index(p, 200)
        assert m is not None and m >= 1
        found += 1
    # even n, on the existence hyperplane
    found = 0
    while found < 5:
        p = random_valid_polygon(rng, 6)
        if is_convex(p, 1e-9):
            continue
        m = convexification_index(p, 200)
        assert m is not None and m >= 1
        found += 1


def test_convexity_absorbing_along_orbits():
    rng = np.random.default_rng(58)
    for _ in range(500):
        cur = random_centered(rng, 5)
        seen_convex = False
        for _ in range(60):
            flag = is_convex(cur, 1e-9)
            if seen_convex:
                assert flag
            seen_convex = seen_convex or flag
            nxt = develop(cur)
            c = centroid(nxt)
            scale = max(abs(v - c) for v in nxt.vertices)
            cur = Polygon((v - c) / scale for v in nxt.vertices)


def test_convexification_ensemble_deterministic():
    a = convexification_ensemble(5, 40, max_m=100, seed=42)
    b = convexification_ensemble(5, 40, max_m=100, seed=42)
    assert a == b
    c = convexification_ensemble(5, 40, max_m=100, seed=43)
    assert a != c
    assert sum(1 for m in a if m is not None) >= 38
