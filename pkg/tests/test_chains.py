from fractions import Fraction

import numpy as np
import pytest

from stoned_billiards import chains as ch
from stoned_billiards import hecke
from stoned_billiards.suites import admissible_chis

T = Fraction(1, 3)


def test_masep_stationary_is_F_at_ones():
    lam = (0, 1, 2, 2)
    fam = hecke.build_F_family(lam, T)
    pi = ch.stationary_exact(ch.masep_chain(lam, T)).probs
    assert pi == fam.ratios_at([1] * 4)


def test_rows_are_stochastic():
    for chain in [ch.masep_chain((1, 2, 3), T), ch.aux_tasep_chain((1, 2, 2)),
                  ch.obasep_chain((1, 2), Fraction(1, 2), Fraction(1, 3), T)]:
        assert chain.check_rows()
        assert chain.is_irreducible()


@pytest.mark.parametrize("lam,rho", [((1, 2, 3), (1, 2, 2)), ((1, 2, 3), (1, 1, 2)), ((1, 2, 3), (1, 2, 3))])
def test_stoned_asep_claimed_law(lam, rho):
    F = hecke.build_F_family(lam, T)
    for chi in admissible_chis(rho):
        chain = ch.stoned_masep_chain(lam, rho, chi, T)
        assert ch.check_stationary(chain, ch.stoned_asep_law(F, lam, rho, chi, T))


def test_two_density_corollary():
    lam, rho = (0, 1, 2), (1, 2, 2)
    chi = (1, 3, 3)
    F = hecke.build_F_family(lam, T)
    chain = ch.stoned_masep_chain(lam, rho, chi, T)
    assert ch.check_stationary(chain, ch.stoned_asep_law_two_densities(F, lam, rho, chi))


def test_bad_stone_parameters_are_named():
    with pytest.raises(ch.ChainError, match=r"p\(1,2\)"):
        ch.stoned_masep_chain((1, 2, 3), (1, 2, 2), (2, 1, 1), 0)


def test_projection_principle():
    lam, rho, chi = (1, 2, 3), (1, 2, 2), (1, 2, 2)
    full = ch.stationary_exact(ch.stoned_masep_chain(lam, rho, chi, 0))
    coarse = ch.stationary_exact(ch.stoned_masep_chain((0, 1, 1), rho, chi, 0))
    assert ch.proj_chain((0, 1, 1), full).probs == coarse.probs


def test_plain_itasep_is_leading_ratio():
    lam, a = (1, 2, 3), (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))
    Psi = hecke.build_Psi_family(lam, a)
    pi = ch.stationary_exact(ch.itasep_chain(lam, a)).probs
    total = Psi.total()
    for mu in Psi.states():
        assert pi[mu] == hecke.leading_ratio(Psi[mu], total, ["R"] * 3)


def test_stoned_itasep_claimed_law():
    lam, rho, a = (1, 2, 3), (1, 1, 2), (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))
    Psi = hecke.build_Psi_family(lam, a)
    p = (Fraction(1, 3), 0, 0)
    chain = ch.stoned_itasep_chain(lam, rho, p, a)
    assert ch.stationary_exact(chain).probs == ch.stoned_itasep_law(Psi, lam, rho, p)


def test_open_boundary_stationary_is_G_at_ones():
    lam, al, be = (1, 2), Fraction(1, 2), Fraction(1, 3)
    G = hecke.build_G_family(lam, al, be, T)
    pi = ch.stationary_exact(ch.obasep_chain(lam, al, be, T)).probs
    assert pi == G.ratios_at([1, 1])


def test_stoned_open_boundary_small():
    lam, chi, cs = (1, 2), (Fraction(9, 10),), Fraction(3, 4)
    G = hecke.build_G_family(lam, Fraction(1, 2), Fraction(1, 2), Fraction(1, 4))
    chain = ch.stoned_obasep_chain(lam, chi, cs, Fraction(1, 2), Fraction(1, 2), Fraction(1, 4))
    assert ch.check_stationary(chain, ch.stoned_obasep_law(G, chi, cs))


def test_open_boundary_parameter_window():
    # stone value 1/2 with alpha = 1/2, t = 1/4 forces p_0 = 1
    with pytest.raises(ch.ChainError, match="p_0"):
        ch.ob_probabilities((Fraction(9, 10),), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 4))


def test_cyclic_shift_is_one_cycle():
    for n in (2, 3, 4):
        shift = ch.aux_cyclic_shift(n)
        h, seen = 1, set()
        while h not in seen:
            seen.add(h)
            h = shift[h]
        assert len(seen) == 2 * n


def test_simulation_is_reproducible_and_close():
    chain = ch.masep_chain((1, 2, 3), T)
    a = ch.simulate(chain, 5, 20000)
    b = ch.simulate(chain, 5, 20000)
    assert np.array_equal(a, b)
    emp = ch.empirical(chain, ch.simulate(chain, 5, 200000), 1000)
    assert ch.tv_distance(emp, ch.stationary_exact(chain)) < 0.02


def test_exact_csv_has_fractions():
    text = ch.stationary_exact(ch.masep_chain((1, 2), 0)).to_csv()
    assert "1/2" in text


@pytest.mark.parametrize("rho", [(1, 2, 3), (1, 2, 2, 3), (1, 1, 2, 3)])
def test_stone_tasep_law_uses_complemented_densities(rho):
    from stoned_billiards.groups import site_densities
    m, n = max(rho), len(rho)
    flip = lambda d: tuple(m + 1 - x for x in d)
    F0 = hecke.build_F_family(tuple(sorted(flip(rho))), 0)
    pi = ch.stationary_exact(ch.aux_tasep_chain(rho)).probs
    raw = {s: F0[flip(site_densities(s, rho))].evaluate([1] * n) for s in pi}
    z = sum(raw.values())
    assert all(pi[s] == raw[s] / z for s in pi)


def test_masep_moves_from_six_site_state():
    # the pairs (0,1), (1,2), (2,1), (1,0) can swap; equal neighbours cannot
    chain = ch.masep_chain((0, 1, 1, 1, 2, 2), T)
    row = chain.trans[(0, 1, 1, 2, 2, 1)]
    moves = {s: v for s, v in row.items() if s != (0, 1, 1, 2, 2, 1)}
    assert len(moves) == 4
    assert sorted(moves.values()) == sorted([T / 6, T / 6, Fraction(1, 6), Fraction(1, 6)])
