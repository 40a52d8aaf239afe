import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metrikit.core import PointCloud, cloud_to_space
from metrikit.norms import (
    INF,
    fuzz_vectors,
    norm,
    parse_exponent,
    power_mean_inequalities,
    verify_comparisons,
    verify_norm_axioms,
    verify_quasinorm_p,
)
from metrikit.properties import classify, quasimetric_constant

EXPONENTS = [0.5, 1.0, 2.0, 3.0, INF]


def test_norm_examples():
    assert norm([3, 4], 2) == 5
    for n in (1, 3, 7):
        for p in (0.5, 1, 2, 3):
            assert norm(np.ones(n), p) == pytest.approx(n ** (1 / p), rel=1e-15)
    assert norm([1, -1], 0.5) == 4
    assert norm([0, 0], 0.5) == 0
    assert norm([-2, 1], INF) == 2


def test_norm_stable_for_extreme_magnitudes():
    assert norm([1e200, 1e200], 2) == pytest.approx(math.sqrt(2) * 1e200)
    assert norm([1e-200, 1e-200], 0.5) == pytest.approx(4e-200)


@pytest.mark.parametrize("text, want", [("inf", INF), ("1/2", 0.5), ("2", 2.0), (3, 3.0)])
def test_parse_exponent(text, want):
    assert parse_exponent(text) == want


def test_parse_exponent_rejects():
    with pytest.raises(ValueError):
        parse_exponent("0")


@pytest.mark.parametrize("p", [1.0, 2.0, 3.0, INF])
def test_norm_axioms_pass_for_p_at_least_one(p):
    v = verify_norm_axioms(p, np.vstack([fuzz_vectors(200, 3, 1), np.eye(3)]))
    assert v.passed, v.counterexample


def test_quasinorm_fails_triangle_on_basis_pair():
    v = verify_norm_axioms(0.5, np.eye(2))
    assert not v.passed
    ce = v.counterexample
    assert ce["axiom"] == "triangle" and ce["lhs"] == 4 and ce["rhs"] == 2


def test_quasinorm_pth_power_examples():
    assert verify_quasinorm_p(0.5, np.eye(2)).passed
    assert verify_quasinorm_p(0.5, [[1, 0], [1, 0]]).passed
    v = verify_quasinorm_p(0.5, fuzz_vectors(150, 3, 4))
    assert v.passed and v.checks["powered_distance_is_metric"]
    with pytest.raises(ValueError):
        verify_quasinorm_p(1.0, np.eye(2))


def test_comparisons_tight_cases():
    ones = np.ones((1, 5))
    e1 = np.eye(5)[:1]
    for p in EXPONENTS:
        for q in EXPONENTS:
            if not p < q:
                continue
            rows = {r.name: r for r in verify_comparisons(p, q, np.vstack([ones, e1]))}
            assert all(r.violations == 0 for r in rows.values())
            if p != INF:
                assert abs(norm(ones[0], p) - 5 ** (1 / p) * norm(ones[0], INF)) <= 1e-12
            assert norm(e1[0], q) == norm(e1[0], p) == 1


def test_comparisons_random_1_2():
    xs = fuzz_vectors(500, 3, 9)
    rows = {r.name: r for r in verify_comparisons(1, 2, xs)}
    assert rows["p_le_n^(1/p-1/q)_q"].violations == 0
    for x in xs[:50]:
        assert norm(x, 1) <= math.sqrt(3) * norm(x, 2) * (1 + 1e-12)


def test_comparisons_reject_bad_order():
    with pytest.raises(ValueError):
        verify_comparisons(2, 1, np.eye(2))


def test_power_mean_examples():
    v = power_mean_inequalities(1, 1, 2)
    assert v.holds and v.rows[0][1] == v.rows[0][2] == 4
    for q in (0.3, 1.0, 2.5):
        v = power_mean_inequalities(1, 0, q)
        assert v.holds
    v = power_mean_inequalities(1, 0, 0.5)
    assert v.rows[0][1] == v.rows[0][2]


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 1e6), st.floats(0, 1e6), st.floats(0.05, 8))
def test_power_mean_random(a, b, q):
    assert power_mean_inequalities(a, b, q).holds


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=6), st.sampled_from(EXPONENTS), st.floats(-50, 50))
def test_homogeneity(x, p, t):
    assert norm(np.multiply(t, x), p) == pytest.approx(abs(t) * norm(x, p), rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("seed", range(5))
def test_p_norm_tends_to_max_norm(seed):
    x = fuzz_vectors(1, 6, seed)[0]
    n = x.size
    for k in range(1, 11):
        p = 2.0**k
        slack = n ** (1 / p) - 1
        assert norm(x, INF) <= norm(x, p) <= norm(x, INF) * (1 + slack) * (1 + 1e-12)


def test_cloud_metric_for_p_at_least_one_and_not_below():
    pts = np.vstack([np.eye(2), [[0, 0]], fuzz_vectors(6, 2, 3)])
    for p in (1.0, 2.0, INF):
        assert classify(cloud_to_space(PointCloud(pts, p))).is_metric
    assert quasimetric_constant(cloud_to_space(PointCloud(pts, 0.5)))[0] > 1
