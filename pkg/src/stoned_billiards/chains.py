"""Finite Markov chains with exact rational kernels, their exact stationary
laws, seeded simulation, and constructors for every process in the package."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from . import kernels
from .groups import (
    Perm, apply_sbar, check_densities, check_partition_vector, compositions,
    inverse, kappa_count, omega_members, signed_compositions, site_densities,
)
from .hecke import f_t
from .poly import Q

RNG_ID = "numpy.PCG64"


class ChainError(ValueError):
    pass


@dataclass
class ChainSpec:
    name: str
    states: list
    trans: dict
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.states = sorted(self.states, key=_state_key)
        self.index = {s: k for k, s in enumerate(self.states)}

    def __len__(self):
        return len(self.states)

    def check_rows(self):
        for s in self.states:
            row = self.trans.get(s, {})
            if any(v < 0 or v > 1 for v in row.values()):
                raise ChainError(f"probability outside [0,1] at {s}")
            if sum(row.values()) != 1:
                raise ChainError(f"row {s} sums to {sum(row.values())}")
            for tgt in row:
                if tgt not in self.index:
                    raise ChainError(f"transition {s} -> {tgt} leaves the state space")
        return True

    def support_graph(self):
        rows, cols = [], []
        for s, row in self.trans.items():
            for tgt, v in row.items():
                if v > 0:
                    rows.append(self.index[s])
                    cols.append(self.index[tgt])
        n = len(self.states)
        return csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))

    def is_irreducible(self):
        k, _ = connected_components(self.support_graph(), directed=True, connection="strong")
        return k == 1

    def balance_residual(self, pi):
        """Exact pi P - pi, as a dict of the nonzero entries."""
        flow = {s: Fraction(0) for s in self.states}
        for s, row in self.trans.items():
            w = pi.get(s, 0)
            if w:
                for tgt, v in row.items():
                    flow[tgt] += w * v
        return {s: flow[s] - pi.get(s, 0) for s in self.states if flow[s] != pi.get(s, 0)}

    def cumulative_tables(self):
        """CSR arrays (offsets, targets, cumulative float probabilities)."""
        offsets = [0]
        targets, cum = [], []
        for s in self.states:
            acc = Fraction(0)
            for tgt, v in sorted(self.trans[s].items(), key=lambda kv: self.index[kv[0]]):
                if v > 0:
                    acc += v
                    targets.append(self.index[tgt])
                    cum.append(float(acc))
            cum[-1] = 1.0
            offsets.append(len(targets))
        return (np.asarray(offsets, dtype=np.int64), np.asarray(targets, dtype=np.int64),
                np.asarray(cum, dtype=np.float64))

    def edge_list(self):
        out = io.StringIO()
        wr = csv.writer(out, lineterminator="\n")
        wr.writerow(["source", "target", "probability", "float"])
        for s in self.states:
            for tgt, v in sorted(self.trans[s].items(), key=lambda kv: self.index[kv[0]]):
                wr.writerow([state_text(s), state_text(tgt), str(v), repr(float(v))])
        return out.getvalue()


def _state_key(s):
    return state_text(s)


def state_text(s):
    if isinstance(s, tuple) and s and isinstance(s[0], tuple):
        return "|".join(state_text(x) for x in s)
    if isinstance(s, tuple):
        return "(" + ",".join(str(x) for x in s) + ")"
    return str(s)


@dataclass
class StationaryResult:
    probs: dict
    method: str
    meta: dict = field(default_factory=dict)

    def __getitem__(self, s):
        return self.probs.get(s, 0)

    def to_csv(self):
        out = io.StringIO()
        wr = csv.writer(out, lineterminator="\n")
        wr.writerow(["state", "exact", "float"])
        for s in sorted(self.probs, key=_state_key):
            v = self.probs[s]
            exact = str(v) if isinstance(v, Fraction) else ""
            wr.writerow([state_text(s), exact, repr(float(v))])
        return out.getvalue()


def _add(row, tgt, v):
    if v:
        row[tgt] = row.get(tgt, Fraction(0)) + v


def _build(name, states, kernel, params):
    trans = {}
    for s in states:
        row = {}
        for tgt, v in kernel(s):
            _add(row, tgt, v)
        row[s] = 1 - sum(v for tgt, v in row.items() if tgt != s)
        trans[s] = {k: v for k, v in row.items() if v != 0}
    chain = ChainSpec(name, list(states), trans, params)
    chain.check_rows()
    return chain


# ------------------------------------------------------------------ engine

def stationary_exact(chain, check=True):
    if check and not chain.is_irreducible():
        raise ChainError(f"{chain.name}: chain is reducible")
    n = len(chain)
    idx = chain.index
    # rows: for each target state, sum_s pi_s P(s, t) - pi_t = 0; last row normalization
    entries = {}
    for s, row in chain.trans.items():
        j = idx[s]
        for tgt, v in row.items():
            i = idx[tgt]
            if i == n - 1:
                continue
            entries.setdefault(i, {})
            entries[i][j] = entries[i].get(j, Fraction(0)) + v
    for i in range(n - 1):
        entries.setdefault(i, {})
        entries[i][i] = entries[i].get(i, Fraction(0)) - 1
    entries[n - 1] = {j: Fraction(1) for j in range(n)}
    sdm = {i: {j: QQ(v.numerator, v.denominator) for j, v in r.items() if v} for i, r in entries.items()}
    sdm = {i: r for i, r in sdm.items() if r}
    A = DomainMatrix(sdm, (n, n), QQ)
    b = DomainMatrix({n - 1: {0: QQ(1)}}, (n, 1), QQ)
    x = A.lu_solve(b).to_Matrix()
    probs = {chain.states[k]: Fraction(int(x[k].p), int(x[k].q)) for k in range(n)}
    if chain.balance_residual(probs):
        raise ChainError("exact solve failed the balance check")
    return StationaryResult(probs, "exact-solve", {"chain": chain.name})


def rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed, k):
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(k)]


def simulate(chain, seed, steps, start=None, backend=None):
    """Trajectory of state indices (length steps + 1, including the start)."""
    offsets, targets, cum = chain.cumulative_tables()
    u = rng(seed).random(steps)
    s0 = 0 if start is None else chain.index[start]
    path = kernels.chain_walk(offsets, targets, cum, u, s0, backend=backend)
    return path


def empirical(chain, path, burn_in=0):
    counts = np.bincount(np.asarray(path[burn_in:]), minlength=len(chain))
    total = counts.sum()
    probs = {s: counts[k] / total for k, s in enumerate(chain.states)}
    return StationaryResult(probs, "monte-carlo", {"samples": int(total), "burn_in": burn_in})


def tv_distance(a, b):
    pa = a.probs if isinstance(a, StationaryResult) else a
    pb = b.probs if isinstance(b, StationaryResult) else b
    keys = set(pa) | set(pb)
    return 0.5 * sum(abs(float(pa.get(k, 0)) - float(pb.get(k, 0))) for k in keys)


def check_stationary(chain, pi):
    """Exact check: rows sum to 1, pi sums to 1 and pi P = pi."""
    return sum(pi.values()) == 1 and not chain.balance_residual(pi)


# ------------------------------------------------------------ ring processes

def _ring_pair(mu, i):
    n = len(mu)
    return (mu[n - 1], mu[0]) if i == 0 else (mu[i - 1], mu[i])


def masep_chain(lam, t):
    lam = check_partition_vector(lam)
    n = len(lam)
    t = Q(t)

    def kernel(mu):
        for i in range(n):
            a, b = _ring_pair(mu, i)
            if a != b:
                yield apply_sbar(i, mu), f_t(a, b, t) / n

    return _build(f"ASEP{lam}", compositions(lam), kernel, {"lambda": lam, "t": t})


def _stone_edge(sigma, rho, i):
    """Stones (j, j') on sites i, i+1 and whether the density increases."""
    n = len(sigma)
    sinv = inverse(sigma)
    a, b = (n, 1) if i == 0 else (i, i + 1)
    j, jj = sinv[a - 1], sinv[b - 1]
    return j, jj, rho[j - 1] < rho[jj - 1]


def aux_tasep_chain(rho):
    rho = check_densities(rho)
    n = len(rho)

    def kernel(sigma):
        for i in range(n):
            _, _, up = _stone_edge(sigma, rho, i)
            if up:
                yield apply_sbar(i, sigma), Fraction(1, n)

    return _build(f"auxTASEP{rho}", omega_members(rho), kernel, {"rho": rho})


def stone_probability(chi, t, j, jj):
    chi_j, chi_jj = Q(chi[j - 1]), Q(chi[jj - 1])
    den = t * chi_j - chi_jj
    if den == 0:
        raise ChainError(f"p({j},{jj}) undefined: zero denominator")
    return (chi_j - chi_jj) / den


def check_stone_probabilities(rho, chi, t):
    n = len(rho)
    t = Q(t)
    if any(Q(c) == 0 for c in chi):
        raise ChainError("chi entries must be nonzero")
    table = {}
    for j in range(1, n + 1):
        for jj in range(1, n + 1):
            if rho[j - 1] < rho[jj - 1]:
                v = stone_probability(chi, t, j, jj)
                if not 0 <= v < 1:
                    raise ChainError(f"p({j},{jj}) = {v} is not in [0,1)")
                table[(j, jj)] = v
    if not any(table.values()):
        raise ChainError("all signal probabilities p(j,j') vanish")
    return table


def stoned_masep_chain(lam, rho, chi, t):
    lam = check_partition_vector(lam)
    rho = check_densities(rho)
    n = len(lam)
    if len(rho) != n or len(chi) != n:
        raise ChainError("lambda, rho and chi must have the same length")
    t = Q(t)
    ptab = check_stone_probabilities(rho, chi, t)
    states = [(mu, s) for mu in compositions(lam) for s in omega_members(rho)]

    def kernel(state):
        mu, sigma = state
        for i in range(n):
            j, jj, up = _stone_edge(sigma, rho, i)
            if not up:
                continue
            s2 = apply_sbar(i, sigma)
            a, b = _ring_pair(mu, i)
            if a != b:
                move = ptab[(j, jj)] * f_t(a, b, t)
                yield (apply_sbar(i, mu), s2), move / n
                yield (mu, s2), (1 - move) / n
            else:
                yield (mu, s2), Fraction(1, n)

    return _build(f"stonedASEP{lam}", states, kernel,
                  {"lambda": lam, "rho": rho, "chi": tuple(Q(c) for c in chi), "t": t})


def itasep_chain(lam, a):
    lam = check_partition_vector(lam)
    n = len(lam)
    rate = _rates(lam, a)

    def kernel(mu):
        for i in range(n):
            x, y = _ring_pair(mu, i)
            if x > y:
                yield apply_sbar(i, mu), rate[x] / n

    return _build(f"iTASEP{lam}", compositions(lam), kernel, {"lambda": lam, "a": a})


def _rates(lam, a):
    out = {}
    for k in set(lam):
        if k == 0:
            continue
        v = Q(a[k]) if isinstance(a, dict) else Q(a[k - 1])
        if not 0 < v < 1:
            raise ChainError(f"a_{k} = {v} is not in (0,1)")
        out[k] = v
    return out


def stoned_itasep_chain(lam, rho, p, a):
    """p[j-1] is the signal probability of the density-1 stone j (ignored otherwise)."""
    lam = check_partition_vector(lam)
    rho = check_densities(rho)
    if max(rho) != 2:
        raise ChainError("the stoned inhomogeneous TASEP needs exactly two stone densities")
    n = len(lam)
    rate = _rates(lam, a)
    pj = {}
    for j in range(1, n + 1):
        if rho[j - 1] == 1:
            v = Q(p[j - 1])
            if not 0 <= v < 1:
                raise ChainError(f"p({j}) = {v} is not in [0,1)")
            pj[j] = v
    if not any(pj.values()):
        raise ChainError("some density-1 stone needs p(j) > 0")
    states = [(mu, s) for mu in compositions(lam) for s in omega_members(rho)]

    def kernel(state):
        mu, sigma = state
        for i in range(n):
            j, _, up = _stone_edge(sigma, rho, i)
            if not up:
                continue
            s2 = apply_sbar(i, sigma)
            x, y = _ring_pair(mu, i)
            if x > y:
                move = pj[j] * rate[x]
                yield (apply_sbar(i, mu), s2), move / n
                yield (mu, s2), (1 - move) / n
            else:
                yield (mu, s2), Fraction(1, n)

    return _build(f"stonediTASEP{lam}", states, kernel,
                  {"lambda": lam, "rho": rho, "p": tuple(Q(x) for x in p), "a": a})


# ------------------------------------------------------- open boundary chains

def obasep_chain(lam, alpha, beta, t):
    lam = check_partition_vector(lam)
    n = len(lam)
    alpha, beta, t = Q(alpha), Q(beta), Q(t)

    def kernel(mu):
        c = Fraction(1, n + 1)
        if mu[0] != 0:
            yield apply_sbar(0, mu, "C"), c * alpha
        if mu[-1] != 0:
            yield apply_sbar(n, mu, "C"), c * beta
        for i in range(1, n):
            if mu[i - 1] != mu[i]:
                yield apply_sbar(i, mu, "C"), c * f_t(mu[i - 1], mu[i], t)

    return _build(f"obASEP{lam}", signed_compositions(lam), kernel,
                  {"lambda": lam, "alpha": alpha, "beta": beta, "t": t})


def iota(h, n):
    return h % (2 * n) if h > 0 else (h + 1) % (2 * n)


def aux_cyclic_shift(n):
    """The map h -> iota^-1(iota(h) + 1) on +-[n], as a dict."""
    inv = {}
    for h in list(range(1, n + 1)) + list(range(-n, 0)):
        inv[iota(h, n)] = h
    return {h: inv[(iota(h, n) + 1) % (2 * n)] for h in inv.values()}


def ob_probabilities(chi, chi_stone, alpha, beta, t):
    """p_0, p_n, p_i^up, p_i^down (i = 1..n-1) for the stoned open chain."""
    cs = Q(chi_stone)
    alpha, beta, t = Q(alpha), Q(beta), Q(t)
    p0 = (1 - cs**2) / ((1 - t) * cs + alpha * (1 - cs**2))
    pn = (1 - cs**2) / ((1 - t) * cs + beta * (1 - cs**2))
    up, down = [], []
    for c in chi:
        c = Q(c)
        up.append((cs - c) / (t * cs - c))
        down.append((cs - 1 / c) / (t * cs - 1 / c))
    named = [("p_0", p0), ("p_n", pn)] + [(f"p_{i}^up", v) for i, v in enumerate(up, 1)] \
        + [(f"p_{i}^down", v) for i, v in enumerate(down, 1)]
    for nm, v in named:
        if not 0 < v < 1:
            raise ChainError(f"{nm} = {v} is not in (0,1)")
    return p0, pn, up, down


def stoned_obasep_chain(lam, chi, chi_stone, alpha, beta, t):
    """State space S_lambda^{+-} x +-[n]; chi = (chi_1, ..., chi_{n-1})."""
    lam = check_partition_vector(lam)
    n = len(lam)
    if len(chi) != n - 1:
        raise ChainError("need n-1 values chi_1..chi_{n-1}")
    alpha, beta, t = Q(alpha), Q(beta), Q(t)
    p0, pn, up, down = ob_probabilities(chi, chi_stone, alpha, beta, t)
    shift = aux_cyclic_shift(n)
    stones = sorted(shift)
    states = [(mu, h) for mu in signed_compositions(lam) for h in stones]

    def kernel(state):
        mu, h = state
        h2 = shift[h]
        if h == -1:
            if mu[0] != 0:
                yield (apply_sbar(0, mu, "C"), h2), p0 * alpha
                yield (mu, h2), 1 - p0 * alpha
            else:
                yield (mu, h2), Fraction(1)
        elif h == n:
            if mu[-1] != 0:
                yield (apply_sbar(n, mu, "C"), h2), pn * beta
                yield (mu, h2), 1 - pn * beta
            else:
                yield (mu, h2), Fraction(1)
        else:
            i = h if h > 0 else -h - 1
            prob = up[i - 1] if h > 0 else down[i - 1]
            nu = apply_sbar(i, mu, "C")
            move = prob * f_t(mu[i - 1], mu[i], t) if nu != mu else Fraction(0)
            if move:
                yield (nu, h2), move
            yield (mu, h2), 1 - move

    return _build(f"stonedobASEP{lam}", states, kernel,
                  {"lambda": lam, "chi": tuple(Q(c) for c in chi), "chi_stone": Q(chi_stone),
                   "alpha": alpha, "beta": beta, "t": t})


def chi_with_stone(chi, chi_stone, h):
    """chi^{(h)}: chi_stone (or its inverse for h < 0) inserted at position |h|."""
    k = abs(h)
    cs = Q(chi_stone) if h > 0 else 1 / Q(chi_stone)
    chi = [Q(c) for c in chi]
    return tuple(chi[:k - 1] + [cs] + chi[k - 1:])


# ------------------------------------------------------------------ projection

def proj_state(lam_prime, mu):
    """Relabel species k of a (1..n)-state by lam_prime[k-1]."""
    return tuple(lam_prime[x - 1] for x in mu)


def proj_chain(lam_prime, result):
    """Push a stationary law on (1..n)-states (optionally paired with a stone
    state) forward to lam_prime-states."""
    out = {}
    for s, v in result.probs.items():
        if isinstance(s[0], tuple):
            key = (proj_state(lam_prime, s[0]),) + tuple(s[1:])
        else:
            key = proj_state(lam_prime, s)
        out[key] = out.get(key, 0) + v
    return StationaryResult(out, result.method, dict(result.meta, projected_to=tuple(lam_prime)))


# ---------------------------------------------------------- claimed formulas

def stoned_asep_law(F, lam, rho, chi, t, F_dens=None):
    """pi(mu, sigma) proportional to F_mu(sigma chi; t) * omega(sigma), with
    omega the stationary law of the stone TASEP. Stones hop toward higher
    density, so omega is the TASEP weight of the complemented densities
    m + 1 - rho."""
    from .groups import act_on_tuple
    from .hecke import build_F_family
    n = len(lam)
    m = max(rho)
    flip = lambda d: tuple(m + 1 - x for x in d)
    if F_dens is None:
        F_dens = build_F_family(tuple(sorted(flip(rho))), 0)
    ones = [1] * n
    raw = {}
    for sigma in omega_members(rho):
        omega = F_dens[flip(site_densities(sigma, rho))].evaluate(ones)
        point = act_on_tuple(sigma, [Q(c) for c in chi])
        for mu in compositions(lam):
            raw[(mu, sigma)] = F[mu].evaluate(point) * omega
    z = sum(raw.values())
    return {s: v / z for s, v in raw.items()}


def stoned_asep_law_two_densities(F, lam, rho, chi):
    """pi(mu, sigma) proportional to F_mu(sigma chi; t) alone (two stone densities)."""
    from .groups import act_on_tuple
    if len(set(rho)) != 2:
        raise ChainError("needs exactly two stone densities")
    raw = {}
    for sigma in omega_members(rho):
        point = act_on_tuple(sigma, [Q(c) for c in chi])
        for mu in compositions(lam):
            raw[(mu, sigma)] = F[mu].evaluate(point)
    z = sum(raw.values())
    return {s: v / z for s, v in raw.items()}


def stoned_itasep_law(Psi, lam, rho, p):
    """pi(mu, sigma) = (1/|Omega|) lim_R Psi_mu(sigma chi)/Pi_lambda(chi)."""
    from .groups import act_on_tuple
    from .hecke import leading_ratio
    n = len(lam)
    chi = ["R" if rho[j] != 1 or Q(p[j]) == 0 else 1 / Q(p[j]) for j in range(n)]
    omega = omega_members(rho)
    total = Psi.total()
    out = {}
    for sigma in omega:
        point = act_on_tuple(sigma, chi)
        for mu in compositions(lam):
            out[(mu, sigma)] = leading_ratio(Psi[mu], total, point) / len(omega)
    return out


def stoned_obasep_law(G, chi, chi_stone):
    """pi(mu, h) = G_mu(chi^{(h)}) / (2n K(chi))."""
    n = len(G.lam)
    K = G.total()
    base = tuple(Q(c) for c in chi) + (Q(chi_stone),)
    kval = K.evaluate(base)
    out = {}
    for mu in G.states():
        for h in list(range(1, n + 1)) + list(range(-n, 0)):
            out[(mu, h)] = G[mu].evaluate(chi_with_stone(chi, chi_stone, h)) / (2 * n * kval)
    return out


__all__ = [
    "ChainSpec", "StationaryResult", "ChainError", "stationary_exact", "simulate", "empirical",
    "tv_distance", "check_stationary", "masep_chain", "aux_tasep_chain", "stoned_masep_chain",
    "itasep_chain", "stoned_itasep_chain", "obasep_chain", "aux_cyclic_shift", "stoned_obasep_chain",
    "proj_chain", "proj_state", "iota", "Perm", "kappa_count", "RNG_ID", "stoned_asep_law",
    "stoned_asep_law_two_densities", "stoned_itasep_law", "stoned_obasep_law", "chi_with_stone",
    "check_stone_probabilities", "ob_probabilities", "spawn_seeds", "rng",
]
