"""Multiline queues (the t = 0 oracle for ASEP polynomials) and the closed-form
two-point correlations of the stoned multispecies TASEP."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, prod

from .groups import all_perms, check_partition_vector, inverse
from .poly import LaurentPolynomial, Q


@dataclass(frozen=True)
class MultilineQueue:
    """rows[r] is the sorted tuple of (1-based) columns holding a ball in row r."""

    rows: tuple
    n: int

    def render(self, labels=None):
        out = []
        for r, cols in enumerate(self.rows):
            line = []
            for c in range(1, self.n + 1):
                if c not in cols:
                    line.append("·")
                elif labels is None:
                    line.append("●")
                else:
                    line.append(str(labels[r][c]))
            out.append(" ".join(line))
        return "\n".join(out)


def row_sizes(lam):
    lam = check_partition_vector(lam)
    m = Counter(lam)
    sizes, acc = [], 0
    for r in range(lam[-1] + 1):
        acc += m.get(r, 0)
        sizes.append(acc)
    return sizes


def count_mlq(lam):
    n = len(lam)
    return prod(comb(n, k) for k in row_sizes(lam))


def enumerate_mlq(lam, n=None):
    """All multiline queues for lam, in row-major lexicographic order."""
    lam = check_partition_vector(lam)
    n = len(lam) if n is None else n
    if n != len(lam):
        raise ValueError("n must equal len(lambda)")
    choices = [list(combinations(range(1, n + 1), k)) for k in row_sizes(lam)]

    def rec(r, acc):
        if r == len(choices):
            yield MultilineQueue(tuple(acc), n)
            return
        for cols in choices[r]:
            yield from rec(r + 1, acc + [cols])

    yield from rec(0, [])


def bully_paths(q, lam):
    """Label every ball by the row where its bully path starts.

    Returns (labels, bp): labels[r] maps column -> label and bp is the bottom
    row read left to right.
    """
    sizes = row_sizes(lam)
    n = q.n
    used = [set() for _ in q.rows]
    labels = [dict() for _ in q.rows]
    bottom = len(q.rows) - 1
    ell = 0
    for start in range(len(q.rows)):
        new_paths = sizes[start] - (sizes[start - 1] if start else 0)
        for _ in range(new_paths):
            ell += 1
            free = [c for c in q.rows[start] if c not in used[start]]
            c = free[0]
            used[start].add(c)
            labels[start][c] = start
            for r in range(start + 1, bottom + 1):
                for k in range(n):
                    cc = (c - 1 + k) % n + 1
                    if cc in q.rows[r] and cc not in used[r]:
                        c = cc
                        break
                else:
                    raise RuntimeError("bully path found no free ball")
                used[r].add(c)
                labels[r][c] = start
    bp = tuple(labels[bottom][c] for c in range(1, n + 1))
    return labels, bp


def weight(q):
    """x^g with g_j the number of balls in column j above the bottom row."""
    g = [0] * q.n
    for cols in q.rows[:-1]:
        for c in cols:
            g[c - 1] += 1
    return LaurentPolynomial.monomial(g)


def mlq_polynomials(lam):
    """mu -> sum of weights of the queues with bp = mu (equals F_mu(x; 0))."""
    lam = check_partition_vector(lam)
    n = len(lam)
    out = {}
    for q in enumerate_mlq(lam):
        _, bp = bully_paths(q, lam)
        out[bp] = out.get(bp, LaurentPolynomial.zero(n)) + weight(q)
    return out


def three_species(n, k, ell):
    """(0,...,0, 1,...,1, 2,...,2) with k zeros and ell ones."""
    return (0,) * k + (1,) * ell + (2,) * (n - k - ell)


def check_crucial_fact(n):
    """Queues for the three-species vectors with bp_1 = 1 and bp_n = 2 never
    have a ball in column n above the bottom row; returns the offenders."""
    bad = []
    for k in range(n - 1):
        for ell in range(1, n - k):
            lam = three_species(n, k, ell)
            for q in enumerate_mlq(lam):
                _, bp = bully_paths(q, lam)
                if bp[0] == 1 and bp[-1] == 2 and weight(q).degree_in(n) != 0:
                    bad.append((lam, q))
    return bad


# ---------------------------------------------------------------- correlations

def correlation_D(n, k, ell, p):
    p = Q(p)
    return Fraction(ell * (n - k) * (n - k - ell)) / ((n - 1) * (n - p * k) * (n - p * (k + ell)))


def correlation_E(n, i, j, p):
    """Closed form for the probability that site 1 holds species i and site n
    species j in the stoned TASEP with one density-1 stone, conditional on a
    stone state sigma with sigma(1) = n."""
    if not 1 <= i < j <= n:
        raise ValueError("need 1 <= i < j <= n")
    p = Q(p)
    num = n * (1 - p) * (j - i) * (2 * n - (i + j - 1) * p)
    den = (n - 1) * (n - i * p) * (n - (i - 1) * p) * (n - j * p) * (n - (j - 1) * p)
    return num / den


def correlation_E_pie(n, i, j, p):
    """Same quantity by inclusion-exclusion over D values."""
    D = lambda k, ell: correlation_D(n, k, ell, p) if 0 <= k and 0 <= ell and k + ell <= n else Fraction(0)
    return D(i - 1, j - i) - D(i, j - i - 1) - D(i - 1, j - i + 1) + D(i, j - i)


def correlation_E_hat(n, i, j, p):
    """The closed form without its (i, j)-independent prefactor."""
    p = Q(p)
    return Fraction((j - i)) * (2 * n - (i + j - 1) * p) / (
        (n - i * p) * (n - (i - 1) * p) * (n - j * p) * (n - (j - 1) * p))


def psi_delta(n, p):
    """Sum over i < j of E_hat(i, j) (e_i - e_j): the limiting-direction vector."""
    vec = [Fraction(0)] * n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            e = correlation_E_hat(n, i, j, p)
            vec[i - 1] += e
            vec[j - 1] -= e
    return tuple(vec)


def psi_delta_from_F(n, p, F=None):
    """Sum over w with w^-1(1) < w^-1(n) of F_w(1,...,1,1-p; 0)(e_{w^-1(1)} - e_{w^-1(n)}).

    A permutation w indexes the state (w^-1(1), ..., w^-1(n)).
    """
    p = Q(p)
    if F is None:
        F = mlq_polynomials(tuple(range(1, n + 1)))
    point = [Fraction(1)] * (n - 1) + [1 - p]
    vec = [Fraction(0)] * n
    for w in all_perms(n):
        wi = inverse(w)
        a, b = wi[0], wi[n - 1]
        if a < b:
            v = F[wi].evaluate(point)
            vec[a - 1] += v
            vec[b - 1] -= v
    return tuple(vec)


def is_parallel(u, v, positive=True):
    """Exact test u = c v with c > 0 (or c != 0)."""
    u = [Q(x) for x in u]
    v = [Q(x) for x in v]
    k = next((i for i, x in enumerate(v) if x != 0), None)
    if k is None:
        return all(x == 0 for x in u)
    c = u[k] / v[k]
    if positive and c <= 0:
        return False
    return all(a == c * b for a, b in zip(u, v))
