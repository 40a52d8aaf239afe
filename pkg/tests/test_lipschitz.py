import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metrikit.core import SEMIDISTANCE, FiniteDistanceSpace, line_space
from metrikit.generators import random_assignment, random_distance, random_metric, random_ultrametric
from metrikit.lipschitz import (
    FiniteMap,
    NotSemimetricError,
    RealFunction,
    check_compose,
    compose_bound,
    distance_to_point,
    epsilon_image_check,
    function_calculus,
    function_constant,
    is_lipschitz,
    is_lipschitz_one_sided,
    lipschitz_constant,
    lipschitz_constant_direct,
    pullback_semidistance,
)
from metrikit.properties import find_triangle_violation

LINE3 = line_space([0, 1, 2])
LINE5 = line_space([0, 1, 2, 3, 4])


def test_identity_and_constant_maps():
    assert lipschitz_constant(FiniteMap(LINE3, LINE3, (0, 1, 2))).value == 1
    one = FiniteDistanceSpace([[0]])
    assert lipschitz_constant(FiniteMap(one, one, (0,))).value == 0
    assert lipschitz_constant(FiniteMap(LINE3, LINE3, (1, 1, 1))).value == 0


def test_doubling_map():
    L = lipschitz_constant(FiniteMap(LINE3, LINE5, (0, 2, 4)))
    assert L.value == 2 and L.witness == (0, 1)


def test_unbounded_constant():
    semi = FiniteDistanceSpace([[0, 0], [0, 0]], kind=SEMIDISTANCE)
    L = lipschitz_constant(FiniteMap(semi, LINE3, (0, 2)))
    assert not L.bounded and L.value is None and L.witness == (0, 1)
    assert L.to_dict() == {"bounded": False, "constant": None, "witness": [0, 1]}
    assert lipschitz_constant_direct(FiniteMap(semi, LINE3, (0, 2))) == L


def test_map_validation():
    with pytest.raises(ValueError):
        FiniteMap(LINE3, LINE3, (0, 1))
    with pytest.raises(ValueError):
        FiniteMap(LINE3, LINE3, (0, 1, 3))


def test_pullback_examples():
    np.testing.assert_array_equal(pullback_semidistance(FiniteMap(LINE3, LINE3, (0, 1, 2))).dist, LINE3.dist)
    assert not pullback_semidistance(FiniteMap(LINE3, LINE3, (2, 2, 2))).dist.any()
    pb = pullback_semidistance(FiniteMap(LINE3, line_space([0, 5]), (0, 0, 1)))
    assert pb.kind == SEMIDISTANCE and pb.dist[0, 1] == 0 and pb.dist[0, 2] == 5
    assert find_triangle_violation(pb) is None


def test_compose_examples():
    ident = FiniteMap(LINE3, LINE3, (0, 1, 2))
    assert check_compose(ident, ident).measured == 1
    assert compose_bound(2, 3) == 6
    with pytest.raises(ValueError):
        check_compose(ident, FiniteMap(LINE5, LINE5, (0, 1, 2, 3, 4)))


def test_calculus_zero_function():
    f1 = RealFunction(LINE3, [0, 2, 1])
    rows = {r.name: r for r in function_calculus(f1, RealFunction(LINE3, [0, 0, 0]))}
    assert rows["sum"].bound == 2 and rows["sum"].measured == 2
    assert rows["product"].bound == 0 and rows["product"].measured == 0
    assert all(r.holds for r in rows.values())


def test_calculus_equal_functions_tight_max_min():
    f = RealFunction(LINE3, [0, 2, 1])
    rows = {r.name: r for r in function_calculus(f, f)}
    assert rows["max"].measured == rows["max"].bound == 2
    assert rows["min"].measured == rows["min"].bound == 2


def test_distance_to_point_examples():
    one = FiniteDistanceSpace([[0]])
    assert function_constant(distance_to_point(one, 0)).value == 0
    f = distance_to_point(LINE3, 0)
    assert f.values.tolist() == [0, 1, 2] and function_constant(f).value == 1
    u = random_ultrametric(7, 2)
    for p in range(7):
        assert function_constant(distance_to_point(u, p)).value <= 1 + 1e-12


def test_distance_to_point_refuses_non_semimetric():
    with pytest.raises(NotSemimetricError) as e:
        distance_to_point(line_space([0, 1, 2], 2), 0)
    assert e.value.triple == (0, 1, 2)


def test_epsilon_image_examples():
    ident = FiniteMap(LINE3, LINE3, (0, 1, 2))
    assert epsilon_image_check(ident, [0, 1, 2], 1).image_connected
    const = FiniteMap(LINE3, LINE3, (1, 1, 1))
    v = epsilon_image_check(const, [0, 1, 2], 1)
    assert v.holds and v.image == (1,)


def test_doubling_image_threshold():
    from metrikit.connectivity import is_epsilon_connected

    dom = line_space([0, 1, 2, 3])
    cod = line_space([0, 2, 4, 6])
    fmap = FiniteMap(dom, cod, (0, 1, 2, 3))
    v = epsilon_image_check(fmap, [0, 1, 2, 3], 1)
    assert v.constant == 2 and v.image_connected
    assert not is_epsilon_connected(cod, [0, 1, 2, 3], 2 - 1e-6)[0]


metric_pairs = st.builds(
    lambda n, m, seed: (random_metric(n, seed), random_metric(m, seed + 1), random_assignment(n, m, seed)),
    st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**32 - 1),
)


@settings(max_examples=80, deadline=None)
@given(metric_pairs)
def test_two_routes_agree(data):
    dom, cod, a = data
    fmap = FiniteMap(dom, cod, a)
    assert lipschitz_constant(fmap) == lipschitz_constant_direct(fmap)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_one_sided_characterization(n, seed):
    rng = np.random.default_rng(seed)
    s = random_metric(n, seed)
    f = RealFunction(s, rng.normal(size=n))
    L = function_constant(f).value
    for cand in (L, L * 0.9, L * 1.1, 0.0):
        assert is_lipschitz(f, cand, 1e-12) == is_lipschitz_one_sided(f, cand, 1e-12)
    assert is_lipschitz(f, L)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_distance_to_point_on_random_semimetrics(n, seed):
    base = random_distance(n, seed).dist.copy()
    if n > 2:
        base[0, 1] = base[1, 0] = 0.0
    from metrikit.constructions import chain_metric

    s = chain_metric(FiniteDistanceSpace(base, kind=SEMIDISTANCE)).space
    for p in range(n):
        L = function_constant(distance_to_point(s, p))
        assert L.bounded and L.value <= 1 + 1e-12
