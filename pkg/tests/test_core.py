import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metrikit.core import (
    SEMIDISTANCE,
    CantorSpec,
    FiniteDistanceSpace,
    PointCloud,
    StructureError,
    cantor_intervals,
    cantor_points,
    cloud_to_space,
    diameter,
    line_space,
    validate_space,
)


def test_smallest_metric_space_is_valid():
    assert validate_space(FiniteDistanceSpace([[0, 1], [1, 0]])) == []


def test_asymmetry_reported_with_pair():
    (v,) = validate_space(FiniteDistanceSpace([[0, 1], [2, 0]]))
    assert str(v) == "symmetry at (0,1)"


def test_zero_off_diagonal_depends_on_kind():
    z = [[0, 0], [0, 0]]
    (v,) = validate_space(FiniteDistanceSpace(z))
    assert str(v) == "zero off-diagonal at (0,1)"
    assert validate_space(FiniteDistanceSpace(z, kind=SEMIDISTANCE)) == []


def test_other_axioms():
    bad = validate_space(FiniteDistanceSpace([[1, 1], [1, 0]]))
    assert [v.axiom for v in bad] == ["nonzero diagonal"]
    bad = validate_space(FiniteDistanceSpace([[0, -1], [-1, 0]], kind=SEMIDISTANCE))
    assert {v.axiom for v in bad} == {"negative entry"}


@pytest.mark.parametrize(
    "mat, labels",
    [([[0, 1, 2], [1, 0, 1]], ()), ([[0, 1], [1, 0]], ("a",)), (np.zeros((0, 0)), ())],
)
def test_structural_errors(mat, labels):
    with pytest.raises(StructureError):
        FiniteDistanceSpace(mat, labels)


def test_labels_default_and_matrix_is_readonly():
    s = FiniteDistanceSpace([[0, 1], [1, 0]])
    assert s.labels == ("p0", "p1")
    with pytest.raises(ValueError):
        s.dist[0, 1] = 5


def test_cloud_to_space_examples():
    s = cloud_to_space(PointCloud([[0], [1], [2]], 2))
    np.testing.assert_array_equal(s.dist, [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert cloud_to_space(PointCloud([[0, 0], [3, 4]], 2)).dist[0, 1] == 5
    assert cloud_to_space(PointCloud([[1, 0], [0, 1]], 0.5)).dist[0, 1] == 4


def test_duplicate_points_demote_kind():
    s = cloud_to_space(PointCloud([[0, 0], [0, 0], [1, 1]]))
    assert s.kind == SEMIDISTANCE
    assert validate_space(s) == []


def test_bad_cloud():
    with pytest.raises(ValueError):
        PointCloud([[0.0]], p=0)
    with pytest.raises(StructureError):
        PointCloud([[0.0, np.nan]])


@pytest.mark.parametrize("ratio", [Fraction(1, 3), Fraction(1, 4)])
def test_cantor_level_zero(ratio):
    assert cantor_points(CantorSpec.uniform(0, ratio)).points.ravel().tolist() == [0.0, 1.0]


def test_cantor_levels_one_and_two():
    one = cantor_points(CantorSpec.uniform(1)).points.ravel()
    np.testing.assert_array_equal(one, [0, 1 / 3, 2 / 3, 1])
    two = cantor_points(CantorSpec.uniform(2)).points.ravel()
    np.testing.assert_array_equal(two, [0, 1 / 9, 2 / 9, 1 / 3, 2 / 3, 7 / 9, 8 / 9, 1])


def test_cantor_interval_lengths_and_nesting():
    for k in range(6):
        ivs = cantor_intervals(CantorSpec.uniform(k))
        assert len(ivs) == 2**k
        assert all(b - a == Fraction(1, 3**k) for a, b in ivs)
        assert len(cantor_points(CantorSpec.uniform(k)).points) == 2 ** (k + 1)
        if k:
            parent = cantor_intervals(CantorSpec.uniform(k - 1))
            for x in cantor_points(CantorSpec.uniform(k)).points.ravel():
                assert any(float(a) <= x <= float(b) for a, b in parent)


def test_cantor_variable_ratios():
    pts = cantor_points(CantorSpec(2, (Fraction(1, 3), Fraction(1, 5)))).points.ravel()
    np.testing.assert_allclose(pts, [0, 1 / 15, 4 / 15, 1 / 3, 2 / 3, 11 / 15, 14 / 15, 1])


@pytest.mark.parametrize("ratios", [(Fraction(1, 2),), (0,), ()])
def test_cantor_spec_rejects(ratios):
    with pytest.raises(ValueError):
        CantorSpec(1, ratios)


def test_diameter_conventions():
    s = line_space([0, 1, 2])
    assert diameter(s, [1]) == 0
    assert diameter(s, []) == 0
    assert diameter(s) == 2
    with pytest.raises(IndexError):
        diameter(s, [3])


clouds = st.integers(1, 7).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.floats(-10, 10), min_size=2, max_size=2), min_size=n, max_size=n),
        st.sampled_from([0.5, 1.0, 2.0, 3.0, float("inf")]),
    )
)


@settings(max_examples=60, deadline=None)
@given(clouds, st.randoms())
def test_cloud_space_valid_and_permutation_equivariant(cloud, rnd):
    pts, p = cloud
    s = cloud_to_space(PointCloud(pts, p))
    assert validate_space(s) == []
    perm = list(range(len(pts)))
    rnd.shuffle(perm)
    t = cloud_to_space(PointCloud([pts[i] for i in perm], p))
    np.testing.assert_array_equal(t.dist, s.dist[np.ix_(perm, perm)])


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_diameter_monotone(n, seed):
    rng = np.random.default_rng(seed)
    s = cloud_to_space(PointCloud(rng.normal(size=(n, 2))))
    for r in range(n + 1):
        for small in itertools.combinations(range(n), r):
            big = set(small) | {int(rng.integers(n))}
            assert diameter(s, small) <= diameter(s, big)
