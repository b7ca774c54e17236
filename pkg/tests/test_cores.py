from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stoned_billiards import billiards as bl
from stoned_billiards import cores
from stoned_billiards.groups import AffinePermutation

partitions = st.lists(st.integers(1, 12), max_size=10).map(lambda x: tuple(sorted(x, reverse=True)))


def test_hook_lengths_small():
    assert cores.hook_lengths((2, 1)) == [[3, 1], [1]]
    assert cores.is_ncore((2, 1), 2)
    assert not cores.is_ncore((2, 1), 3)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([3, 4]))
def test_agrrbt_states_give_cores(seed, n):
    traj = bl.simulate_agrrbt(bl.RayConfig(bl.delta_vector(n)), 0.7, 200, seed)
    seq = cores.grow_along_trajectory(traj, every=1)
    assert all(cores.is_ncore(nu, n) for nu in seq)
    # the direct read-off agrees with adding boxes move by move
    assert seq == cores.grow_by_moves(traj)


def test_kappa_matches_word_construction():
    traj = bl.simulate_agrrbt(bl.RayConfig(bl.delta_vector(3)), 0.8, 60, 3)
    for M in range(0, 61, 10):
        u = traj.state(M)
        assert cores.kappa(u) == cores.kappa_by_word(u)


def test_core_size_grows_with_length():
    traj = bl.simulate_agrrbt(bl.RayConfig(bl.delta_vector(3)), 0.8, 100, 1)
    sizes = [sum(nu) for nu in cores.grow_along_trajectory(traj)]
    assert sizes == sorted(sizes)


def test_gamma_add_rejects_empty_class():
    with pytest.raises(ValueError):
        cores.gamma_add((1,), 0, 3)


@settings(max_examples=100, deadline=None)
@given(partitions)
def test_partition_configuration_round_trip(nu):
    lo, occ = cores.partition_to_configuration(nu)
    assert cores.configuration_to_partition(lo, occ) == nu


def test_empty_partition_is_step():
    lo, occ = cores.partition_to_configuration(())
    assert lo == 0 and list(occ) == [1]


@pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
def test_limit_region_vertices_exact(p):
    v = cores.limit_vertices(3, p)
    assert v[0][0] == 0 and v[-1][1] == 0
    assert all(isinstance(x, Fraction) for pt in v for x in pt)


def test_limit_vertices_three_quarters_ratio():
    v = cores.limit_vertices(3, Fraction(3, 4))
    s = v[0][1] / -6
    assert v == [(0, -6 * s), (s, -4 * s), (9 * s, 0)]


@pytest.mark.parametrize("n,p", [(3, 0.5), (5, 0.25), (12, 0.75)])
def test_regions_have_unit_area(n, p):
    assert abs(cores.limit_region(n, Fraction(p)).area - 1) < 1e-9
    assert abs(cores.region_infinity(p).area - 1) < 1e-9


def test_scaled_diagram_area():
    assert abs(cores.scaled_diagram((5, 3, 1)).area - 1) < 1e-12


def test_hausdorff_properties():
    a = cores.limit_region(3, Fraction(1, 2))
    b = cores.region_infinity(0.5)
    assert cores.hausdorff(a, a) < 1e-12
    assert abs(cores.hausdorff(a, b) - cores.hausdorff(b, a)) < 1e-12
    c = cores.limit_region(6, Fraction(1, 2))
    assert cores.hausdorff(a, b) <= cores.hausdorff(a, c) + cores.hausdorff(c, b) + 1e-3


def test_hausdorff_of_translate():
    from shapely import affinity
    a = cores.limit_region(3, Fraction(1, 2)).polygon
    assert abs(cores.hausdorff(a, affinity.translate(a, 0.1, 0)) - 0.1) < 1e-9
