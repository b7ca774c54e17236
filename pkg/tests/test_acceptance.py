"""The twelve acceptance criteria, each at its stated tolerance. Every test
prints one PASS/FAIL line; the lines are repeated in the pytest summary.

Run alone with: pytest tests/test_acceptance.py -v
"""
from fractions import Fraction

import pytest

from stoned_billiards import suites

RESULTS = {}
PS = suites.PS


def record(num, title, checks):
    ok = all(c.ok for c in checks)
    secs = sum(c.seconds for c in checks)
    line = f"{'PASS' if ok else 'FAIL'}  criterion {num:>2}: {title} ({len(checks)} checks, {secs:.1f}s)"
    RESULTS[num] = (line, checks)
    print(line)
    for c in checks:
        print("    " + c.line())
    assert ok, "\n".join(c.line() for c in checks if not c.ok)


def test_c01_qkz_construction():
    record(1, "qKZ exchange relations, zero residual",
           [suites.check_qkz(lam, t) for lam in suites.QKZ_LAMBDAS for t in suites.QKZ_TS])


def test_c02_multiline_queues():
    record(2, "linear-solve F(x;0) equals the multiline-queue sum",
           [suites.check_mlq(lam) for lam in [(0, 1, 2), (1, 2, 3)]])


def test_c03_stoned_asep_balance():
    record(3, "stoned ASEP claimed law is stationary", suites.balance_stoned_asep())


def test_c04_limiting_direction():
    record(4, "limiting direction from the exact toric chain",
           [suites.check_direction(n, p) for n in (3, 4) for p in PS])


def test_c05_chamber_table():
    record(5, "n=3 chamber probabilities", [suites.check_chamber_table(p) for p in PS])


def test_c06_stoned_itasep():
    record(6, "stoned iTASEP exact stationary equals the leading-part ratio",
           suites.balance_stoned_itasep())


def test_c07_stoned_open_asep():
    record(7, "stoned open-boundary ASEP claimed law is stationary", suites.balance_stoned_obasep())


@pytest.mark.slow
def test_c08_monte_carlo_tv():
    c = suites.check_stoned_tasep_mc(steps=10 ** 6, burn_in=10 ** 5, tol=0.01)
    record(8, "stoned TASEP Monte Carlo TV <= 0.01", [c])
    assert c.seconds <= 60


@pytest.mark.slow
def test_c09_core_limit_shape():
    record(9, "core growth approaches the limit region",
           [suites.check_core_vertices(3, Fraction(3, 4)),
            suites.check_core_growth(3, Fraction(3, 4), seeds=(0, 1, 2, 3, 4), tol=0.05)])


def test_c10_finite_n_regions():
    record(10, "finite-n regions approach the n->oo region", [suites.check_region_convergence(Fraction(1, 2), (3, 6, 12, 24))])


@pytest.mark.slow
def test_c11_scan_identity():
    record(11, "scan passage times match geometric LPP (chi-square, alpha=0.01)",
           [suites.check_scan_identity(a, b, p, trials=10 ** 4, alpha=0.01)
            for a, b in [(1, 1), (2, 2), (3, 2)] for p in (Fraction(1, 3), Fraction(1, 2))])


@pytest.mark.slow
def test_c12_demazure_law():
    record(12, "random billiard endpoint matches the Demazure product law",
           [suites.check_demazure(3, 6, Fraction(1, 2), trials=10 ** 5, tol=0.02)])
