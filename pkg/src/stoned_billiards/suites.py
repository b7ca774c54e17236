"""Named verification checks. Each check returns a Check; the CLI's `verify`
command and the acceptance tests both call these."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import billiards as bl
from . import chains as ch
from . import cores, hecke, kernels, mlq, scan
from .groups import Perm, all_perms


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}  {self.detail}"


def _timed(name, fn):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failure, reported with its message
        ok, detail = False, f"{type(e).__name__}: {e}"
    return Check(name, bool(ok), detail, time.perf_counter() - t0)


def _fr(x):
    return Fraction(x)


# ---------------------------------------------------------------- polynomials

def check_qkz(lam, t):
    def run():
        fam = hecke.build_F_family(lam, t)
        bad = hecke.qkz_residuals(fam)
        return not bad, f"{len(fam)} polynomials, {len(bad)} nonzero residuals"
    return _timed(f"qKZ lambda={tuple(lam)} t={t}", run)


def check_mlq(lam):
    def run():
        fam = hecke.build_F_family(lam, 0)
        queues = mlq.mlq_polynomials(lam)
        bad = [mu for mu in fam.states() if fam[mu] != queues.get(mu)]
        return not bad, f"{len(fam)} compositions, {len(bad)} mismatches"
    return _timed(f"multiline queues lambda={tuple(lam)}", run)


# ----------------------------------------------------------------- balance

def check_stoned_asep(lam, rho, chi, t, F=None):
    def run():
        fam = F or hecke.build_F_family(lam, t)
        chain = ch.stoned_masep_chain(lam, rho, chi, t)
        pi = ch.stoned_asep_law(fam, lam, rho, chi, t)
        ok = ch.check_stationary(chain, pi)
        if len(set(rho)) == 2:
            ok = ok and ch.check_stationary(chain, ch.stoned_asep_law_two_densities(fam, lam, rho, chi))
        return ok, f"{len(chain)} states"
    return _timed(f"stoned ASEP lambda={tuple(lam)} rho={tuple(rho)} chi={_txt(chi)} t={t}", run)


def check_stoned_itasep(lam, rho, p, a, Psi=None):
    def run():
        fam = Psi or hecke.build_Psi_family(lam, a)
        chain = ch.stoned_itasep_chain(lam, rho, p, a)
        pi = ch.stoned_itasep_law(fam, lam, rho, p)
        exact = ch.stationary_exact(chain).probs
        ok = ch.check_stationary(chain, pi) and all(exact[s] == pi[s] for s in chain.states)
        return ok, f"{len(chain)} states"
    return _timed(f"stoned iTASEP lambda={tuple(lam)} rho={tuple(rho)} p={_txt(p)}", run)


def check_stoned_obasep(lam, chi, chi_stone, alpha, beta, t):
    def run():
        G = hecke.build_G_family(lam, alpha, beta, t)
        chain = ch.stoned_obasep_chain(lam, chi, chi_stone, alpha, beta, t)
        pi = ch.stoned_obasep_law(G, chi, chi_stone)
        return ch.check_stationary(chain, pi), f"{len(chain)} states"
    return _timed(f"stoned open ASEP lambda={tuple(lam)} chi={_txt(chi)} stone={chi_stone} t={t}", run)


def _txt(v):
    return "(" + ",".join(str(x) for x in v) + ")"


# ----------------------------------------------------------- directions

def paper_direction(n, p):
    """Closed-form limiting directions quoted for n = 3 and n = 4."""
    p = _fr(p)
    if n == 3:
        return (3 - 2 * p, p, p - 3)
    if n == 4:
        return (24 - 30 * p + 9 * p * p, 8 - 2 * p - 3 * p * p, -8 + 14 * p - 3 * p * p,
                -24 + 18 * p - 3 * p * p)
    raise ValueError("only n = 3, 4 are tabulated")


def psi_from_chain(n, p):
    word = bl.ray_word(bl.RayConfig(bl.delta_vector(n)))
    zeta = ch.stationary_exact(bl.toric_chain(word, p)).probs
    return bl.psi_from_zeta(zeta, word)


def check_direction(n, p):
    def run():
        psi = psi_from_chain(n, p)
        ok = mlq.is_parallel(psi, mlq.psi_delta(n, p))
        if n in (3, 4):
            ok = ok and mlq.is_parallel(psi, paper_direction(n, p))
        return ok, f"psi={_txt(psi)}"
    return _timed(f"limiting direction n={n} p={p}", run)


def check_correlations(n, p):
    def run():
        bad = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
               if mlq.correlation_E(n, i, j, p) != mlq.correlation_E_pie(n, i, j, p)]
        return not bad, f"{len(bad)} mismatched pairs"
    return _timed(f"correlation closed form n={n} p={p}", run)


def conditional_correlations(n, p):
    """Exact P(site 1 holds i, site n holds j | stones in state sigma) for every
    sigma with sigma(1) = n, from the stoned TASEP with one density-1 stone."""
    p = _fr(p)
    lam = tuple(range(1, n + 1))
    rho = (1,) + (2,) * (n - 1)
    chi = (1 - p,) + (1,) * (n - 1)
    chain = ch.stoned_masep_chain(lam, rho, chi, 0)
    pi = ch.stationary_exact(chain).probs
    out = {}
    for sigma in sorted({s[1] for s in chain.states}):
        if sigma[0] != n:
            continue
        fiber = [s for s in chain.states if s[1] == sigma]
        z = sum(pi[s] for s in fiber)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out[(sigma, i, j)] = sum(pi[s] for s in fiber if s[0][0] == i and s[0][-1] == j) / z
    return out


def check_correlations_exact(n, p):
    def run():
        got = conditional_correlations(n, p)
        bad = [k for k, v in got.items() if v != mlq.correlation_E(n, k[1], k[2], p)]
        return not bad, f"{len(got)} (sigma,i,j) triples, {len(bad)} mismatches"
    return _timed(f"correlations vs exact solve n={n} p={p}", run)


def chamber_table_n3(p):
    """The six rational functions for n = 3."""
    p = _fr(p)
    a = (2 - 2 * p + p * p) / (18 - 18 * p + 4 * p * p)
    b = (2 - 2 * p) / (9 - 9 * p + 2 * p * p)
    c = (4 - 4 * p + p * p) / (18 - 18 * p + 4 * p * p)
    d = (1 - p) / (9 - 9 * p + 2 * p * p)
    return {Perm((1, 2, 3)): a, Perm((1, 3, 2)): b, Perm((2, 1, 3)): c,
            Perm((2, 3, 1)): a, Perm((3, 1, 2)): d, Perm((3, 2, 1)): c}


def check_chamber_table(p):
    def run():
        word = bl.ray_word(bl.RayConfig(bl.delta_vector(3)))
        got = bl.chamber_probabilities(word, p)
        want = chamber_table_n3(p)
        bad = [w for w in all_perms(3) if got[Perm(w)] != want[Perm(w)]]
        return not bad and sum(got.values()) == 1, " ".join(f"{''.join(map(str, w))}:{got[w]}" for w in sorted(got))
    return _timed(f"chamber probabilities n=3 p={p}", run)


def check_demazure(n=3, M=6, p=Fraction(1, 2), trials=10 ** 5, seed=12, tol=0.02):
    def run():
        word = bl.ray_word(bl.RayConfig(bl.delta_vector(n)))
        exact = bl.demazure_distribution(word, M, p)
        u = ch.rng(seed).random((trials, M))
        counts = {}
        start = tuple(range(1, n + 1))
        letters = np.asarray(word.letters)
        for row in u:
            w, _ = kernels.billiard_walk(start, letters, 0, row, float(p), False)
            key = tuple(int(x) for x in w[-1])
            counts[key] = counts.get(key, 0) + 1
        emp = {k: v / trials for k, v in counts.items()}
        tv = ch.tv_distance(emp, exact)
        return tv <= tol, f"TV={tv:.4f} over {len(exact)} outcomes"
    return _timed(f"Demazure product law n={n} M={M} p={p}", run)


# ------------------------------------------------------------------ Monte Carlo

def check_stoned_tasep_mc(lam=(1, 2, 3), rho=(1, 2, 2), chi=(1, 2, 2), steps=10 ** 6, burn_in=10 ** 5,
                          seed=20240601, tol=0.01):
    def run():
        chain = ch.stoned_masep_chain(lam, rho, chi, 0)
        exact = ch.stationary_exact(chain)
        path = ch.simulate(chain, seed, steps + burn_in)
        emp = ch.empirical(chain, path, burn_in + 1)
        tv = ch.tv_distance(emp, exact)
        return tv <= tol, f"TV={tv:.4f} over {len(chain)} states"
    return _timed(f"stoned TASEP Monte Carlo lambda={tuple(lam)}", run)


# ------------------------------------------------------------------- cores

def check_core_vertices(n=3, p=Fraction(3, 4)):
    def run():
        v = cores.limit_vertices(n, p)
        ref = [(0, -6), (1, -4), (9, 0)]
        s = v[0][1] / ref[0][1]
        ok = all(x == s * a and y == s * b for (x, y), (a, b) in zip(v, ref))
        return ok, "vertices " + " ".join(f"({x},{y})" for x, y in v)
    return _timed(f"limit region vertices n={n} p={p}", run)


def core_distance(n, p, M, seed):
    cfg = bl.RayConfig(bl.delta_vector(n))
    traj = bl.simulate_agrrbt(cfg, p, M, seed)
    nu = cores.kappa(traj.state(M))
    return cores.hausdorff(cores.scaled_diagram(nu), cores.limit_region(n, p))


def check_core_growth(n=3, p=Fraction(3, 4), seeds=(0, 1, 2, 3, 4), short=10 ** 3, long=10 ** 5, tol=0.05):
    def run():
        rows = []
        ok = True
        for s in seeds:
            d1, d2 = core_distance(n, p, short, s), core_distance(n, p, long, s)
            ok = ok and d2 <= tol and d2 < d1
            rows.append(f"seed{s}:{d1:.4f}->{d2:.4f}")
        return ok, " ".join(rows)
    return _timed(f"core limit shape n={n} p={p}", run)


def check_region_convergence(p=Fraction(1, 2), ns=(3, 6, 12, 24)):
    def run():
        rinf = cores.region_infinity(p)
        d = [cores.hausdorff(cores.limit_region(n, p), rinf) for n in ns]
        ok = all(a > b for a, b in zip(d, d[1:]))
        return ok, " ".join(f"n={n}:{x:.4f}" for n, x in zip(ns, d))
    return _timed(f"finite-n regions approach the n->oo region p={p}", run)


# -------------------------------------------------------------------- scan

# pre-registered seeds: (scan sampler, LPP sampler)
SCAN_SEEDS = {(1, 1): (101, 201), (2, 2): (102, 202), (3, 2): (103, 203)}


def check_scan_identity(a, b, p, trials=10 ** 4, alpha=0.01):
    def run():
        s1, s2 = SCAN_SEEDS.get((a, b), (100 + a, 200 + b))
        offset = int(Fraction(p).denominator)
        g = scan.sample_gscan(a, b, float(p), trials, s1 * 10 + offset).samples
        G = scan.lpp_G(a, b, float(p), trials, s2 * 10 + offset)
        stat, pv = scan.chi2_same_distribution(g, G - a + 1)
        return pv > alpha, f"chi2={stat:.2f} p-value={pv:.4f}"
    return _timed(f"scan identity (a,b)=({a},{b}) p={p}", run)


def check_scan_shape(p=0.5, ks=(100, 1000, 10000), seed=7):
    def run():
        rinf = cores.region_infinity(p)
        _, parts = scan.scan_process(p, 0, max(ks), seed, record=ks)
        d = [cores.hausdorff(scan.scaled_partition(parts[k]), rinf) for k in ks]
        return all(x > y for x, y in zip(d, d[1:])), " ".join(f"k={k}:{x:.4f}" for k, x in zip(ks, d))
    return _timed(f"scan TASEP shape p={p}", run)


# ------------------------------------------------------------------- suites

STONED_ASEP_CASES = [((0, 1, 2), (1, 2, 2)), ((1, 2, 3), (1, 1, 2)), ((1, 2, 3, 4), (1, 2, 2, 2))]
ITASEP_A = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))
ITASEP_PS = [(Fraction(1, 3), Fraction(1, 5), 0), (0, Fraction(1, 3), 0)]


def balance_stoned_asep(cases=STONED_ASEP_CASES):
    out = []
    for lam, rho in cases:
        for t in (Fraction(0), Fraction(1, 4)):
            F = hecke.build_F_family(lam, t)
            for chi in admissible_chis(rho):
                out.append(check_stoned_asep(lam, rho, chi, t, F))
    return out


def balance_stoned_itasep():
    Psi = hecke.build_Psi_family((1, 2, 3), ITASEP_A)
    return [check_stoned_itasep((1, 2, 3), (1, 1, 2), p, ITASEP_A, Psi) for p in ITASEP_PS]


def balance_stoned_obasep():
    return [check_stoned_obasep(lam, chi, cs, Fraction(1, 2), Fraction(1, 2), t)
            for lam, chi, cs in OPEN_CASES for t in (Fraction(0), Fraction(1, 4))]


def _balance():
    return balance_stoned_asep() + balance_stoned_itasep() + balance_stoned_obasep()


def admissible_chis(rho):
    """Two choices with chi increasing in the density, so every signal
    probability lies in [0, 1) for t in [0, 1)."""
    rho = tuple(rho)
    return [tuple(Fraction(r) for r in rho), tuple(r + Fraction(j, 7) for j, r in enumerate(rho, 1))]


# (lambda, chi_1..chi_{n-1}, stone value); valid for alpha = beta = 1/2, t in {0, 1/4}
OPEN_CASES = [((1, 2), (Fraction(9, 10),), Fraction(3, 4)),
              ((0, 1, 2), (Fraction(6, 5), Fraction(11, 10)), Fraction(4, 5))]

QKZ_LAMBDAS = [(0, 1), (1, 2), (0, 1, 2), (1, 2, 3), (1, 2, 3, 4)]
QKZ_TS = [Fraction(0), Fraction(1, 3), Fraction(1, 2)]
PS = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]

SUITES = {
    "qkz": lambda: [check_qkz(l, t) for l in QKZ_LAMBDAS for t in QKZ_TS]
    + [check_mlq(l) for l in [(0, 1, 2), (1, 2, 3)]],
    "balance": _balance,
    "correlations": lambda: [check_direction(n, p) for n in (3, 4) for p in PS]
    + [check_correlations(n, p) for n in (3, 4, 5) for p in PS]
    + [check_correlations_exact(n, p) for n in (3, 4) for p in PS],
    "billiards": lambda: [check_chamber_table(p) for p in PS] + [check_demazure(), check_stoned_tasep_mc()],
    "cores": lambda: [check_core_vertices(), check_core_growth(), check_region_convergence()],
    "scan": lambda: [check_scan_identity(a, b, p) for a, b in SCAN_SEEDS
                     for p in (Fraction(1, 3), Fraction(1, 2))] + [check_scan_shape()],
}


def run_suite(name):
    if name == "all":
        return [c for k in SUITES for c in SUITES[k]()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    return SUITES[name]()
