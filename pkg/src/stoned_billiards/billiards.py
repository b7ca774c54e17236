"""Ray tracing in the type-A affine arrangement, reduced random billiard
trajectories, and the toric chains that record them."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import kernels
from .chains import ChainError, ChainSpec, _build, iota, rng, stationary_exact, stoned_obasep_chain
from .groups import (
    AffinePermutation, Perm, all_perms, alcove_barycenter, apply_sbar, chamber_of, compose,
    inverse, longest_element,
)
from .hecke import f_t, leading_ratio
from .poly import Q


class UpsilonError(ValueError):
    """The ray meets an intersection of two or more hyperplanes."""


# ------------------------------------------------------------------ geometry

def right_act(gamma, u):
    """(gamma u)_j = gamma_{ubar(j)} - eta_j."""
    wbar = u.finite_part()
    eta = u.translation_part()
    return tuple(gamma[wbar[j] - 1] - eta[j] for j in range(u.n))


def delta_vector(n):
    """(1, ..., 1, -(n-1))."""
    return tuple([1] * (n - 1) + [-(n - 1)])


# distinct per-coordinate shifts, far below the alcove's inradius
Z0_PERTURBATION = Fraction(1, 7919)


def default_z0(n):
    b = alcove_barycenter(n)
    eps = [Z0_PERTURBATION * Fraction(j * j, n ** 3) for j in range(1, n + 1)]
    mean = sum(eps) / n
    return tuple(b[j] + eps[j] - mean for j in range(n))


def in_alcove_interior(z):
    n = len(z)
    return sum(z) == 0 and all(z[i] > z[i + 1] for i in range(n - 1)) and z[0] - z[-1] < 1


@dataclass(frozen=True)
class RayConfig:
    eta: tuple
    z0: tuple = None

    def __post_init__(self):
        eta = tuple(int(x) for x in self.eta)
        if sum(eta) != 0 or not any(eta):
            raise ValueError(f"direction must be a nonzero integer vector summing to 0: {eta}")
        z0 = default_z0(len(eta)) if self.z0 is None else tuple(Q(x) for x in self.z0)
        if len(z0) != len(eta) or not in_alcove_interior(z0):
            raise ValueError(f"z0 = {z0} is not inside the fundamental alcove")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "z0", z0)

    @property
    def n(self):
        return len(self.eta)


@dataclass
class BilliardWord:
    """letters[k] = i_k; the infinite word repeats with period len(letters)."""

    eta: tuple
    letters: tuple
    crossings: list = field(default_factory=list)

    @property
    def period(self):
        return len(self.letters)

    def letter(self, k):
        return self.letters[k % self.period]

    def reversed(self):
        """Word of the opposite direction: i'_k = i_{N-1-k}."""
        return BilliardWord(tuple(-x for x in self.eta), tuple(reversed(self.letters)))


def crossing_events(cfg, horizon):
    """All (t, i, j, k) with (z0_i - z0_j) + t (eta_i - eta_j) = k and 0 < t <= horizon."""
    z0, eta, n = cfg.z0, cfg.eta, cfg.n
    horizon = Q(horizon)
    events = []
    for i in range(n):
        for j in range(i + 1, n):
            c = z0[i] - z0[j]
            d = eta[i] - eta[j]
            if d == 0:
                continue
            end = c + horizon * d
            lo, hi = (c, end) if d > 0 else (end, c)
            k = int(np.floor(float(lo))) - 1
            while k <= hi + 1:
                t = (k - c) / d
                if 0 < t <= horizon:
                    events.append((t, i + 1, j + 1, k))
                k += 1
    events.sort()
    return events


def _wall_letter(z):
    n = len(z)
    hits = [i for i in range(1, n) if z[i - 1] == z[i]]
    if z[0] - z[-1] == 1:
        hits.append(0)
    return hits


def ray_word(cfg, horizon=2):
    """Exact word of the ray z0 + t*eta: letters i_0, i_1, ... for the first period.

    Crossings over (0, horizon] are enumerated exactly; the letter of each one
    is read off by pulling the crossing point back to the fundamental alcove.
    """
    if horizon < 2:
        raise ValueError("horizon must be >= 2 to confirm the period")
    events = crossing_events(cfg, horizon)
    for a, b in zip(events, events[1:]):
        if a[0] == b[0]:
            raise UpsilonError(
                f"direction {cfg.eta}: hyperplanes x{a[1]}-x{a[2]}={a[3]} and "
                f"x{b[1]}-x{b[2]}={b[3]} are hit together at t={a[0]}")
    n = cfg.n
    u = AffinePermutation.identity(n)
    letters, crossings = [], []
    for t, i, j, k in events:
        point = tuple(cfg.z0[m] + t * cfg.eta[m] for m in range(n))
        hits = _wall_letter(right_act(point, u.inverse()))
        if len(hits) != 1:
            raise UpsilonError(f"crossing at t={t} is not on exactly one wall: {hits}")
        letters.append(hits[0])
        crossings.append((t, (i, j, k), hits[0]))
        u = u.left_mul(hits[0])
    per_unit = sum(1 for t, _, _ in crossings if t <= 1)
    for m in range(per_unit, len(letters)):
        if letters[m] != letters[m - per_unit]:
            raise RuntimeError(f"letters do not repeat after one unit of time ({per_unit} crossings)")
    # the translation by eta repeats the word; its minimal period can be shorter
    N = next(d for d in range(1, per_unit + 1)
             if per_unit % d == 0 and all(letters[m] == letters[m % d] for m in range(per_unit)))
    return BilliardWord(cfg.eta, tuple(letters[:N]), crossings[:N])


def coxeter_word(n):
    """i_j = j mod n, the word of (1, ..., 1, -(n-1))."""
    return BilliardWord(delta_vector(n), tuple(range(n)))


def hyperplane_of(u, i):
    """The hyperplane between A u and A s_i u as (a, b, k): x_a - x_b = k, a < b."""
    n = u.n
    wbar = u.finite_part()
    eta = u.translation_part()
    pos = inverse(wbar)
    if i == 0:
        a, b, c = 1, n, 1
    else:
        a, b, c = i, i + 1, 0
    ja, jb = pos[a - 1], pos[b - 1]
    k = c - eta[ja - 1] + eta[jb - 1]
    if ja > jb:
        ja, jb, k = jb, ja, -k
    return (ja, jb, k)


# -------------------------------------------------------------- trajectories

@dataclass
class Trajectory:
    windows: np.ndarray
    crossed: np.ndarray
    word: BilliardWord
    phase0: int = 0
    grassmannian: bool = False
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.crossed)

    def state(self, M):
        return AffinePermutation(self.windows[M])

    def letters(self):
        N = self.word.period
        return [self.word.letters[(self.phase0 + m) % N] for m in range(len(self.crossed))]

    def crossed_hyperplanes(self):
        """Crossed set, checking that no hyperplane is crossed twice."""
        seen = set()
        for m, (i, c) in enumerate(zip(self.letters(), self.crossed)):
            if c:
                h = hyperplane_of(self.state(m), i)
                if h in seen:
                    raise RuntimeError(f"hyperplane {h} crossed twice (step {m})")
                seen.add(h)
        return seen

    def to_csv(self):
        out = io.StringIO()
        wr = csv.writer(out, lineterminator="\n")
        wr.writerow(["M", "window", "letter", "event"])
        for m, (i, c) in enumerate(zip(self.letters(), self.crossed)):
            wr.writerow([m, " ".join(map(str, self.windows[m])), i, "cross" if c else "reflect"])
        return out.getvalue()


def simulate(word, p, steps, seed, grassmannian=False, phase0=0, backend=None, start=None):
    n = len(word.eta)
    start = AffinePermutation.identity(n) if start is None else start
    u = rng(seed).random(steps)
    windows, crossed = kernels.billiard_walk(start.window, np.asarray(word.letters), phase0, u,
                                             float(p), grassmannian, backend=backend)
    return Trajectory(windows, crossed, word, phase0, grassmannian,
                      {"p": p, "seed": seed, "backend": backend or kernels.BACKEND})


def simulate_rrbt(cfg, p, steps, seed, backend=None):
    return simulate(ray_word(cfg), p, steps, seed, False, backend=backend)


def simulate_agrrbt(cfg, p, steps, seed, backend=None):
    return simulate(ray_word(cfg), p, steps, seed, True, backend=backend)


def centers(windows, n=None):
    """Alcove centers b u for an array of windows (float)."""
    windows = np.asarray(windows)
    n = windows.shape[-1]
    b = np.array([float(x) for x in alcove_barycenter(n)])
    wbar = (windows - 1) % n
    eta = (windows - 1 - wbar) // n
    return b[wbar] - eta


def empirical_direction(traj, M=None):
    M = len(traj) if M is None else M
    c = centers(traj.windows[M])
    norm = np.linalg.norm(c)
    if M == 0 or norm == 0:
        raise ValueError("direction undefined for the initial alcove")
    return c / norm


def unit(v):
    v = np.asarray([float(x) for x in v])
    return v / np.linalg.norm(v)


def lam_walk(n, seed, steps, grassmannian=True, backend=None):
    """Lam's reduced random walk: a uniform simple reflection each step, taken
    whenever it moves away from the base alcove (p = 1 on random letters)."""
    g = rng(seed)
    letters = g.integers(0, n, size=steps)
    word = BilliardWord(tuple([1] * (n - 1) + [-(n - 1)]), tuple(int(x) for x in letters))
    u = np.zeros(steps)
    windows, crossed = kernels.billiard_walk(tuple(range(1, n + 1)), letters, 0, u, 1.0,
                                             grassmannian, backend=backend)
    return Trajectory(windows, crossed, word, 0, grassmannian, {"seed": seed, "walk": "lam"})


def demazure_distribution(word, M, p, n=None):
    """Exact law of the Demazure product of s_{i_{M-1}} ... s_{i_0} with each
    letter kept independently with probability p."""
    n = len(word.eta) if n is None else n
    p = Q(p)
    letters = [word.letter(k) for k in range(M)]
    out = {}
    for keep in product((0, 1), repeat=M):
        prob = Fraction(1)
        u = AffinePermutation.identity(n)
        for k, i in zip(keep, letters):
            prob *= p if k else 1 - p
            if k and u.ascends_left(i):
                u = u.left_mul(i)
        out[u.window] = out.get(u.window, 0) + prob
    return out


# -------------------------------------------------------------- toric chains

def _pass_weight(w, i, t):
    """f_t(w^-1(i), w^-1(i+1)) with site 0 read as site n."""
    n = len(w)
    winv = inverse(w)
    a = winv[n - 1] if i == 0 else winv[i - 1]
    b = winv[0] if i == 0 else winv[i]
    return f_t(a, b, t)


def toric_chain(word, p, t=0):
    """Chain on S_n x Z/N: (w, k) -> (sbar_{i_k} w, k+1) w.p. p f_t(w^-1(i), w^-1(i+1))."""
    n = len(word.eta)
    N = word.period
    p, t = Q(p), Q(t)
    states = [(Perm(w), k) for w in all_perms(n) for k in range(N)]

    def kernel(state):
        w, k = state
        i = word.letters[k]
        nxt = (k + 1) % N
        move = p * _pass_weight(w, i, t)
        if move:
            yield (apply_sbar(i, w), nxt), move
        yield (w, nxt), 1 - move

    chain = _build(f"toric{word.eta}", states, kernel, {"eta": word.eta, "p": p, "t": t})
    if not chain.is_irreducible():
        raise ChainError(f"toric chain for {word.eta} is reducible")
    return chain


def zeta_delta_formula(n, p, t, F):
    """(1/n) F_w(chi^(M); t) / P(chi; t), chi^(M) = (1-p)/(1-pt) in slot M."""
    p, t = Q(p), Q(t)
    chi = (1 - p) / (1 - p * t)
    total = F.total()
    out = {}
    for M in range(n):
        slot = M if M else n
        point = [Fraction(1)] * n
        point[slot - 1] = chi
        den = total.evaluate([chi] + [Fraction(1)] * (n - 1))
        for w in all_perms(n):
            out[(Perm(w), M)] = F[inverse(w)].evaluate(point) / (n * den)
    return out


def zeta_minus_delta_formula(n, p, F0):
    """(1/n) F_w(chi^(n-M); 0) / P(chi; 0), chi^(k) = 1/(1-p) in slot k."""
    p = Q(p)
    c = 1 / (1 - p)
    total = F0.total().evaluate([Fraction(1)] * (n - 1) + [c])
    out = {}
    for M in range(n):
        slot = (n - M - 1) % n + 1
        point = [Fraction(1)] * n
        point[slot - 1] = c
        for w in all_perms(n):
            out[(Perm(w), M)] = F0[inverse(w)].evaluate(point) / (n * total)
    return out


def psi_from_zeta(zeta, word):
    """Sum of zeta(w, k) (e_{w^-1(1)} - e_{w^-1(n)}) over k with i_k = 0 and w^-1(1) < w^-1(n)."""
    n = len(word.eta)
    vec = [Fraction(0)] * n
    for (w, k), v in zeta.items():
        if word.letters[k] != 0:
            continue
        winv = inverse(w)
        a, b = winv[0], winv[n - 1]
        if a < b:
            vec[a - 1] += v
            vec[b - 1] -= v
    return tuple(vec)


def chamber_probabilities(word, p):
    """P(w_* = w) = (N/2)(zeta_eta(w^-1 w0, 0) + zeta_{-eta}(w^-1 w0, 0))."""
    n = len(word.eta)
    zp = stationary_exact(toric_chain(word, p)).probs
    zm = stationary_exact(toric_chain(word.reversed(), p)).probs
    w0 = longest_element(n)
    N = word.period
    out = {}
    for w in all_perms(n):
        x = Perm(compose(inverse(w), w0))
        out[Perm(w)] = Fraction(N, 2) * (zp[(x, 0)] + zm[(x, 0)])
    return out


def chamber_probabilities_formula(n, p, F0):
    """Closed form through F(1,...,1,1-p; 0) and F(1,...,1,1/(1-p); 0)."""
    p = Q(p)
    w0 = longest_element(n)
    pa = [Fraction(1)] * (n - 1) + [1 - p]
    pb = [Fraction(1)] * (n - 1) + [1 / (1 - p)]
    total = F0.total()
    ta, tb = total.evaluate(pa), total.evaluate(pb)
    out = {}
    for w in all_perms(n):
        x = compose(inverse(w), w0)
        f = F0[inverse(x)]
        out[Perm(w)] = (f.evaluate(pa) / ta + f.evaluate(pb) / tb) / 2
    return out


def chamber_sample(word, p, steps, seed, backend=None):
    """One symmetric-direction run: the chamber of u_steps."""
    g = rng(seed)
    eps = int(g.integers(0, 2))
    w = word if eps == 0 else word.reversed()
    traj = simulate(w, p, steps, int(g.integers(2 ** 63)), backend=backend)
    c = centers(traj.windows[-1])
    return eps, chamber_of(list(c))


# ------------------------------------------------------ inhomogeneous chain

def itasep_billiard_chain(n, p, a):
    """Pass-through probability p f_0(w^-1(i), w^-1(i+1)) a_{w^-1(i)} along i_k = k."""
    p = Q(p)
    a = [Q(x) for x in a]
    states = [(Perm(w), k) for w in all_perms(n) for k in range(n)]

    def kernel(state):
        w, k = state
        nxt = (k + 1) % n
        winv = inverse(w)
        lead = winv[n - 1] if k == 0 else winv[k - 1]
        move = p * _pass_weight(w, k, 0) * a[lead - 1]
        if move:
            yield (apply_sbar(k, w), nxt), move
        yield (w, nxt), 1 - move

    return _build(f"itasep-billiard{n}", states, kernel, {"p": p, "a": tuple(a)})


def zeta_itasep_formula(n, p, Psi):
    """(1/n) lim_R Psi_w(chi^(M)) / Pi(chi), chi^(M) = 1/p in slot M and R elsewhere."""
    p = Q(p)
    total = Psi.total()
    out = {}
    for M in range(n):
        slot = M if M else n
        point = ["R"] * n
        point[slot - 1] = 1 / p
        for w in all_perms(n):
            out[(Perm(w), M)] = leading_ratio(Psi[inverse(w)], total, point) / n
    return out


# ----------------------------------------------------------------- type C

def typec_word(n):
    """Letters of s_1 ... s_{n-1} s_n s_{n-1} ... s_1 s_0 (rightmost first)."""
    v = list(range(1, n)) + [n] + list(range(n - 1, 0, -1)) + [0]
    return tuple(reversed(v))


def typec_billiard_chain(n, chi_stone, alpha, beta, t):
    """Toric chain of the type-C trajectory in direction e_1, built from the
    stoned open-boundary chain by relabelling the stone h as iota(h)."""
    lam = tuple(range(1, n + 1))
    base = stoned_obasep_chain(lam, [1] * (n - 1), chi_stone, alpha, beta, t)
    relabel = {s: (s[0], iota(s[1], n)) for s in base.states}
    trans = {relabel[s]: {relabel[x]: v for x, v in row.items()} for s, row in base.trans.items()}
    return ChainSpec(f"typeC-billiard{n}", list(trans), trans, dict(base.params))


__all__ = [
    "RayConfig", "BilliardWord", "Trajectory", "UpsilonError", "ray_word", "coxeter_word",
    "crossing_events", "simulate", "simulate_rrbt", "simulate_agrrbt", "toric_chain",
    "psi_from_zeta", "chamber_probabilities", "chamber_probabilities_formula",
    "itasep_billiard_chain", "empirical_direction", "lam_walk", "demazure_distribution",
    "hyperplane_of", "typec_billiard_chain", "typec_word",
]
