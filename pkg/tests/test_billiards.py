from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stoned_billiards import billiards as bl
from stoned_billiards import chains as ch
from stoned_billiards import hecke
from stoned_billiards.groups import AffinePermutation, Perm, all_perms
from stoned_billiards.suites import chamber_table_n3

PS = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_delta_ray_word_is_j_mod_n(n):
    word = bl.ray_word(bl.RayConfig(bl.delta_vector(n)))
    assert word.letters == tuple(range(n))
    assert word.letters == bl.coxeter_word(n).letters


def test_reversed_word():
    word = bl.ray_word(bl.RayConfig((2, 1, -3)))
    rev = word.reversed()
    assert rev.letters == tuple(reversed(word.letters))
    assert rev.eta == (-2, -1, 3)


def test_degenerate_direction_raises():
    with pytest.raises(bl.UpsilonError):
        bl.ray_word(bl.RayConfig((1, 1, 0, -2)))


def test_bad_direction_rejected():
    with pytest.raises(ValueError):
        bl.RayConfig((1, 1, 1))
    with pytest.raises(ValueError):
        bl.RayConfig((0, 0, 0))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([0.3, 0.6, 0.9]))
def test_trajectory_never_recrosses(seed, p):
    traj = bl.simulate_rrbt(bl.RayConfig(bl.delta_vector(3)), p, 300, seed)
    crossed = traj.crossed_hyperplanes()
    assert len(crossed) == int(traj.crossed.sum())
    # every crossing lengthens the element by one
    assert AffinePermutation(traj.windows[-1]).length == len(crossed)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_grassmannian_walk_stays_in_chamber(seed):
    traj = bl.simulate_agrrbt(bl.RayConfig(bl.delta_vector(3)), 0.75, 300, seed)
    assert all(AffinePermutation(w).is_grassmannian() for w in traj.windows)


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("p", PS)
def test_zeta_delta_formula(n, p):
    t = Fraction(1, 3)
    word = bl.coxeter_word(n)
    zeta = ch.stationary_exact(bl.toric_chain(word, p, t)).probs
    F = hecke.build_F_family(tuple(range(1, n + 1)), t)
    assert zeta == bl.zeta_delta_formula(n, p, t, F)


@pytest.mark.parametrize("p", PS)
def test_zeta_minus_delta_formula(p):
    n = 3
    word = bl.ray_word(bl.RayConfig(bl.delta_vector(n))).reversed()
    zeta = ch.stationary_exact(bl.toric_chain(word, p)).probs
    F0 = hecke.build_F_family(tuple(range(1, n + 1)), 0)
    assert zeta == bl.zeta_minus_delta_formula(n, p, F0)


@pytest.mark.parametrize("p", PS)
def test_chamber_table(p):
    word = bl.coxeter_word(3)
    got = bl.chamber_probabilities(word, p)
    assert got == chamber_table_n3(p)
    F0 = hecke.build_F_family((1, 2, 3), 0)
    assert got == bl.chamber_probabilities_formula(3, p, F0)
    assert sum(got.values()) == 1


def test_chamber_table_quarter_value():
    assert chamber_table_n3(Fraction(1, 4))[Perm((1, 2, 3))] == Fraction(5, 44)


def test_demazure_distribution_sums_to_one():
    word = bl.coxeter_word(3)
    d = bl.demazure_distribution(word, 5, Fraction(1, 3))
    assert sum(d.values()) == 1
    assert d[(1, 2, 3)] == Fraction(2, 3) ** 5


def test_demazure_word_keep_all_is_reduced_product():
    d = bl.demazure_distribution(bl.coxeter_word(3), 4, 1)
    (w, pr), = [(w, v) for w, v in d.items() if v]
    assert pr == 1 and AffinePermutation(w).length == 4


def test_itasep_billiard_chain_matches_formula():
    n, p = 3, Fraction(1, 2)
    a = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))
    zeta = ch.stationary_exact(bl.itasep_billiard_chain(n, p, a)).probs
    Psi = hecke.build_Psi_family(tuple(range(1, n + 1)), a)
    assert zeta == bl.zeta_itasep_formula(n, p, Psi)


def test_typec_chain_is_stochastic():
    chain = bl.typec_billiard_chain(2, Fraction(3, 4), Fraction(1, 2), Fraction(1, 2), 0)
    assert chain.check_rows()
    pi = ch.stationary_exact(chain).probs
    assert sum(pi.values()) == 1


def test_lam_walk_is_reduced():
    traj = bl.lam_walk(3, 5, 200)
    assert AffinePermutation(traj.windows[-1]).length == int(traj.crossed.sum())


def test_trajectory_csv_header():
    traj = bl.simulate_rrbt(bl.RayConfig(bl.delta_vector(3)), 0.5, 5, 1)
    assert traj.to_csv().splitlines()[0] == "M,window,letter,event"
