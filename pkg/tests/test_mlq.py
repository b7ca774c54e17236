from fractions import Fraction

import pytest

from stoned_billiards import hecke, mlq


@pytest.mark.parametrize("lam", [(0, 1, 2), (1, 2, 3), (0, 1, 1, 2), (1, 2, 3, 4)])
def test_queues_reproduce_F_at_t0(lam):
    fam = hecke.build_F_family(lam, 0)
    q = mlq.mlq_polynomials(lam)
    assert set(q) == set(fam.states())
    assert all(q[mu] == fam[mu] for mu in q)


def test_queue_count_matches_enumeration():
    for lam in [(0, 1, 2), (1, 2, 3), (0, 1, 1, 2)]:
        assert mlq.count_mlq(lam) == len(list(mlq.enumerate_mlq(lam)))


def test_crucial_fact_no_offenders():
    for n in (3, 4, 5):
        assert mlq.check_crucial_fact(n) == []


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
def test_inclusion_exclusion_matches_closed_form(n, p):
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            assert mlq.correlation_E(n, i, j, p) == mlq.correlation_E_pie(n, i, j, p)


@pytest.mark.parametrize("n", [3, 4])
def test_direction_through_F_and_closed_form(n):
    for p in [Fraction(1, 4), Fraction(1, 2)]:
        assert mlq.is_parallel(mlq.psi_delta_from_F(n, p), mlq.psi_delta(n, p))


def test_direction_tends_to_lam_direction():
    assert mlq.is_parallel(mlq.psi_delta(3, 0), (3, 0, -3))
    assert mlq.is_parallel(mlq.psi_delta(4, 0), (24, 8, -8, -24))


def test_is_parallel():
    assert mlq.is_parallel((2, 4), (1, 2))
    assert not mlq.is_parallel((-2, -4), (1, 2))
    assert mlq.is_parallel((-2, -4), (1, 2), positive=False)
