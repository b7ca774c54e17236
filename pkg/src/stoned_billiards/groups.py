"""Permutations, affine permutations, compositions and stone configurations.

Conventions used everywhere in the package:

* a permutation is a tuple ``w`` of its one-line notation, ``w[i-1] = w(i)``;
  products compose as functions, ``(u*v)(i) = u(v(i))``.
* an affine permutation is stored by its window ``(w(1), ..., w(n))`` with
  ``w(i+n) = w(i)+n`` (Bjorner-Brenti).  Writing ``w(i) = wbar(i) + n*eta_i``
  gives ``w = wbar * tau_eta``, and an element acts on the right of the
  sum-zero hyperplane by ``(gamma w)_j = gamma_{wbar(j)} - eta_j``.
* ``s_i`` (``i`` in ``Z/nZ``) swaps the values congruent to ``i`` and ``i+1``;
  ``s_0`` has window ``(0, 2, ..., n-1, n+1)``.
"""
from __future__ import annotations

from functools import cached_property
from itertools import permutations

import numpy as np


# ---------------------------------------------------------------- permutations

def identity(n):
    return tuple(range(1, n + 1))


def compose(u, v):
    """Function composition u o v of one-line permutations."""
    return tuple(u[x - 1] for x in v)


def inverse(w):
    out = [0] * len(w)
    for i, x in enumerate(w, 1):
        out[x - 1] = i
    return tuple(out)


def is_permutation(w):
    return sorted(w) == list(range(1, len(w) + 1))


def longest_element(n):
    return tuple(range(n, 0, -1))


def cycle_c(n):
    """The cycle 1 -> 2 -> ... -> n -> 1."""
    return tuple(list(range(2, n + 1)) + [1])


def act_on_tuple(w, y):
    """w y = (y_{w^-1(1)}, ..., y_{w^-1(n)})."""
    winv = inverse(w)
    return tuple(y[winv[i] - 1] for i in range(len(y)))


def apply_sbar(i, obj, kind="A"):
    """Apply the finite simple reflection sbar_i.

    On a tuple of particle species (composition or signed composition) this
    swaps the entries at sites i and i+1 (type A, cyclic, site 0 == site n);
    in type C, ``i == 0`` negates the first entry and ``i == n`` the last.
    On a :class:`Perm` (a stone placement sigma) it is the left product
    sbar_i * sigma, i.e. the stones on sites i and i+1 trade places.
    """
    if isinstance(obj, Perm):
        n = len(obj)
        if kind != "A" or not 0 <= i < n:
            raise IndexError(f"ring index {i} out of range for n={n}")
        a, b = (n, 1) if i == 0 else (i, i + 1)
        swap = {a: b, b: a}
        return Perm(swap.get(x, x) for x in obj)
    mu = list(obj)
    n = len(mu)
    if kind == "A":
        if not 0 <= i < n:
            raise IndexError(f"ring index {i} out of range for n={n}")
        a, b = (n - 1, 0) if i == 0 else (i - 1, i)
        mu[a], mu[b] = mu[b], mu[a]
    elif kind == "C":
        if not 0 <= i <= n:
            raise IndexError(f"type-C index {i} out of range for n={n}")
        if i == 0:
            mu[0] = -mu[0]
        elif i == n:
            mu[-1] = -mu[-1]
        else:
            mu[i - 1], mu[i] = mu[i], mu[i - 1]
    else:
        raise ValueError(f"unknown type {kind!r}")
    return type(obj)(mu) if isinstance(obj, tuple) else mu


class Perm(tuple):
    """One-line permutation; a tuple subclass so it hashes and sorts as one."""

    def __new__(cls, images):
        self = super().__new__(cls, images)
        if not is_permutation(self):
            raise ValueError(f"not a permutation: {tuple(self)}")
        return self

    def __call__(self, i):
        return self[i - 1]

    def __mul__(self, other):
        return Perm(compose(self, other))

    def inv(self):
        return Perm(inverse(self))

    def __repr__(self):
        return "".join(map(str, self)) if len(self) < 10 else f"Perm{tuple(self)}"


def all_perms(n):
    return [Perm(p) for p in permutations(range(1, n + 1))]


# ------------------------------------------------------------ signed permutations

def is_signed_permutation(w):
    return sorted(abs(x) for x in w) == list(range(1, len(w) + 1)) and 0 not in w


def signed_apply(w, h):
    """Value of a signed permutation at h in +-[n], using w(-i) = -w(i)."""
    return w[h - 1] if h > 0 else -w[-h - 1]


def signed_inverse(w):
    out = [0] * len(w)
    for i, x in enumerate(w, 1):
        out[abs(x) - 1] = i if x > 0 else -i
    return tuple(out)


# ------------------------------------------------------------------ compositions

def compositions(lam):
    """All rearrangements of lam, sorted lexicographically."""
    return sorted(set(permutations(tuple(lam))))


def signed_compositions(lam):
    """All (eps_1 mu_1, ..., eps_n mu_n) with mu a rearrangement of lam."""
    out = set()
    for mu in compositions(lam):
        nz = [k for k, x in enumerate(mu) if x != 0]
        for mask in range(1 << len(nz)):
            v = list(mu)
            for b, k in enumerate(nz):
                if mask >> b & 1:
                    v[k] = -v[k]
            out.add(tuple(v))
    return sorted(out)


def check_partition_vector(lam):
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam) or list(lam) != sorted(lam):
        raise ValueError(f"lambda must be nondecreasing and nonnegative, got {lam}")
    return lam


def rotate(mu):
    """c mu = (mu_n, mu_1, ..., mu_{n-1})."""
    return (mu[-1],) + tuple(mu[:-1])


def perm_to_state(w):
    """Identify w in S_n with the particle state (w^-1(1), ..., w^-1(n))."""
    return tuple(inverse(w))


def state_to_perm(mu):
    return Perm(inverse(mu))


# ------------------------------------------------------------- stone densities

def check_densities(rho):
    rho = tuple(int(x) for x in rho)
    m = max(rho)
    if list(rho) != sorted(rho) or rho[0] != 1 or set(rho) != set(range(1, m + 1)) or m < 2:
        raise ValueError(f"density map must be nondecreasing and onto [1..m], m >= 2; got {rho}")
    return rho


def _is_rotation(seq):
    """True if seq is a cyclic rotation of its sorted order."""
    k = len(seq)
    if k <= 2:
        return True
    drops = sum(seq[a] > seq[(a + 1) % k] for a in range(k))
    return drops <= 1


def is_omega(sigma, rho):
    """Membership test for Omega_rho.

    sigma(j) is the site of stone j; reading the stones site by site, the
    stones of each density must appear in their original cyclic order.
    """
    sinv = inverse(sigma)
    for k in set(rho):
        seq = [j for j in sinv if rho[j - 1] == k]
        if not _is_rotation(seq):
            return False
    return True


def omega_members(rho):
    rho = check_densities(rho)
    return [s for s in all_perms(len(rho)) if is_omega(s, rho)]


def site_densities(sigma, rho):
    """(rho(stone on site 1), ..., rho(stone on site n))."""
    sinv = inverse(sigma)
    return tuple(rho[j - 1] for j in sinv)


def kappa_count(sigma, rho):
    """Number of ring edges (i, i+1) whose stones have increasing density."""
    d = site_densities(sigma, rho)
    n = len(d)
    return sum(d[i] < d[(i + 1) % n] for i in range(n))


# --------------------------------------------------------- affine permutations

class AffinePermutation:
    """Element of the affine symmetric group in window notation."""

    __slots__ = ("window", "n", "__dict__")

    def __init__(self, window):
        w = tuple(int(x) for x in window)
        n = len(w)
        if n < 2:
            raise ValueError("need n >= 2")
        if sorted(x % n for x in w) != list(range(n)):
            raise ValueError(f"window values must be distinct mod n: {w}")
        if sum(w) != n * (n + 1) // 2:
            raise ValueError(f"window must sum to n(n+1)/2: {w}")
        self.window = w
        self.n = n

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def simple(cls, i, n):
        return cls.identity(n).left_mul(i)

    @classmethod
    def from_parts(cls, wbar, eta):
        """wbar * tau_eta."""
        n = len(wbar)
        return cls(wbar[i] + n * eta[i] for i in range(n))

    @classmethod
    def translation(cls, eta):
        n = len(eta)
        return cls(i + 1 + n * e for i, e in enumerate(eta))

    def __call__(self, i):
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other):
        return AffinePermutation(self(x) for x in other.window)

    def __eq__(self, other):
        return isinstance(other, AffinePermutation) and self.window == other.window

    def __hash__(self):
        return hash(self.window)

    def __repr__(self):
        return f"AffinePermutation({list(self.window)})"

    def inverse(self):
        n = self.n
        out = [0] * n
        for i, x in enumerate(self.window, 1):
            q, r = divmod(x - 1, n)
            out[r] = i - q * n
        return AffinePermutation(out)

    @cached_property
    def length(self):
        # Shi's inversion formula
        w, n = self.window, self.n
        return sum(abs((w[j] - w[i]) // n) for i in range(n) for j in range(i + 1, n))

    def finite_part(self):
        return Perm(((x - 1) % self.n) + 1 for x in self.window)

    def translation_part(self):
        n = self.n
        return tuple((x - (((x - 1) % n) + 1)) // n for x in self.window)

    def left_mul(self, i):
        """s_i * self: swap the values congruent to i and i+1 mod n."""
        n = self.n
        i %= n
        out = []
        for x in self.window:
            r = x % n
            if r == i:
                out.append(x + 1)
            elif r == (i + 1) % n:
                out.append(x - 1)
            else:
                out.append(x)
        return AffinePermutation(out)

    def right_mul(self, i):
        """self * s_i: swap window positions i, i+1 (with the n+1 wrap for i=0)."""
        return self * AffinePermutation.simple(i, self.n)

    def ascends_left(self, i):
        """True when length(s_i * self) > length(self)."""
        inv = self.inverse()
        i %= self.n
        return inv(i) < inv(i + 1) if i else inv(self.n) < inv(self.n + 1)

    def is_grassmannian(self):
        """Alcove inside the fundamental chamber <=> increasing window."""
        w = self.window
        return all(w[k] < w[k + 1] for k in range(self.n - 1))

    def center(self, base=None):
        """Image of a point of the fundamental alcove (default: barycenter)."""
        from fractions import Fraction
        n = self.n
        b = alcove_barycenter(n) if base is None else base
        wbar = self.finite_part()
        eta = self.translation_part()
        return tuple(Fraction(b[wbar[j] - 1]) - eta[j] for j in range(n))


def alcove_barycenter(n):
    """Barycenter of the fundamental alcove: b_j = ((n-j) - (n-1)/2)/n."""
    from fractions import Fraction
    return tuple(Fraction(2 * (n - j) - (n - 1), 2 * n) for j in range(1, n + 1))


def reduced_word(u):
    """A reduced word (list of letters, first applied first) for u."""
    word = []
    cur = u
    while cur.length > 0:
        for i in range(cur.n):
            if not cur.ascends_left(i):
                cur = cur.left_mul(i)
                word.append(i)
                break
    return word[::-1]


def from_word(word, n):
    """Product s_{k_r} ... s_{k_1} for word = [k_1, ..., k_r] (k_1 applied first)."""
    u = AffinePermutation.identity(n)
    for k in word:
        u = u.left_mul(k)
    return u


def demazure_product(word, n):
    """0-Hecke product of the word [k_1, ..., k_r]; letters that fail to
    increase the length are absorbed (T_i^2 = T_i)."""
    u = AffinePermutation.identity(n)
    for k in word:
        if u.ascends_left(k):
            u = u.left_mul(k)
    return u


def chamber_of(point):
    """w with point in C w: w(j) is the rank of point_j in decreasing order."""
    order = sorted(range(len(point)), key=lambda j: -point[j])
    w = [0] * len(point)
    for rank, j in enumerate(order, 1):
        w[j] = rank
    return Perm(w)


def windows_array(us):
    return np.array([u.window for u in us], dtype=np.int64)
