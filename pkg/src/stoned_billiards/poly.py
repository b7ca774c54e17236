"""Exact multivariate Laurent polynomials with rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product


def Q(x):
    """Coerce to an exact rational (strings like '1/3' are accepted)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def _grlex_key(e):
    return (sum(e), e)


class LaurentPolynomial:
    """Map exponent tuple -> Fraction; zero coefficients are never stored."""

    __slots__ = ("terms", "n")

    def __init__(self, terms=None, n=None):
        terms = dict(terms or {})
        if n is None:
            if not terms:
                raise ValueError("number of variables needed for the zero polynomial")
            n = len(next(iter(terms)))
        self.n = n
        self.terms = {tuple(e): Q(c) for e, c in terms.items() if c != 0}

    # ---------------------------------------------------------------- builders
    @classmethod
    def zero(cls, n):
        return cls({}, n)

    @classmethod
    def constant(cls, c, n):
        return cls({(0,) * n: c}, n)

    @classmethod
    def monomial(cls, exps, c=1):
        return cls({tuple(exps): c}, len(exps))

    @classmethod
    def variable(cls, k, n):
        """x_k (1-based)."""
        e = [0] * n
        e[k - 1] = 1
        return cls({tuple(e): 1}, n)

    def _new(self, terms):
        p = LaurentPolynomial.__new__(LaurentPolynomial)
        p.n = self.n
        p.terms = terms
        return p

    # -------------------------------------------------------------- arithmetic
    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other, self.n)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other, self.n)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            c = Q(other)
            if c == 0:
                return self._new({})
            return self._new({e: v * c for e, v in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return self._new(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Q(c)
        return self._new({e: v / c for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other, self.n)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def copy(self):
        return self._new(dict(self.terms))

    # -------------------------------------------------------------- structure
    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def is_zero(self):
        return not self.terms

    def is_laurent(self):
        return any(x < 0 for e in self.terms for x in e)

    def total_degrees(self):
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, d=None):
        degs = self.total_degrees()
        return len(degs) <= 1 and (d is None or not degs or degs == {d})

    def permute(self, w):
        """(w f)(x) = f(x_{w^-1(1)}, ..., x_{w^-1(n)}): new exponent at j is e[w(j)]."""
        idx = [x - 1 for x in w]
        return self._new({tuple(e[k] for k in idx): c for e, c in self.terms.items()})

    def swap(self, a, b):
        """Exchange x_a and x_b (1-based)."""
        a -= 1
        b -= 1
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[a], e[b] = e[b], e[a]
            out[tuple(e)] = c
        return self._new(out)

    def invert_variable(self, k):
        """x_k -> x_k^{-1}."""
        k -= 1
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[k] = -e[k]
            out[tuple(e)] = c
        return self._new(out)

    def shift(self, exps):
        """Multiply by the monomial x^exps."""
        return self._new({tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def is_symmetric(self):
        return all(self.swap(k, k + 1) == self for k in range(1, self.n))

    # -------------------------------------------------------------- evaluation
    def evaluate(self, point):
        point = [Q(x) for x in point]
        if len(point) != self.n:
            raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    if x == 0 and k < 0:
                        raise ZeroDivisionError("zero substituted into a negative power")
                    v *= x**k
            total += v
        return total

    def substitute(self, values):
        """Substitute some variables by rationals.

        ``values`` maps 1-based variable index to a Fraction; the result keeps
        all n slots (substituted slots get exponent 0).
        """
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            for k, x in values.items():
                if e[k - 1]:
                    if x == 0 and e[k - 1] < 0:
                        raise ZeroDivisionError("zero substituted into a negative power")
                    c = c * Q(x) ** e[k - 1]
                    e[k - 1] = 0
            e = tuple(e)
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    def leading_part_in(self, k):
        """Coefficient of the top power of x_k, as a polynomial with x_k removed (exponent 0)."""
        if not self.terms:
            return self.copy()
        top = max(e[k - 1] for e in self.terms)
        out = {}
        for e, c in self.terms.items():
            if e[k - 1] == top:
                e = list(e)
                e[k - 1] = 0
                out[tuple(e)] = c
        return self._new(out)

    def degree_in(self, k):
        return max(e[k - 1] for e in self.terms) if self.terms else None

    # ---------------------------------------------------------------- printing
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def to_text(self):
        """Canonical serialization: graded-lex descending, reduced fractions."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{k + 1}^{a}" if a != 1 else f"x{k + 1}" for k, a in enumerate(e) if a)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial[{self.n}]({self.to_text()})"


def monomials_of_degree(n, d):
    """All exponent tuples with nonnegative entries summing to d."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def monomials_up_to(n, d):
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n, k))
    return out


def monomials_in_box(n, lo, hi):
    return [tuple(e) for e in product(range(lo, hi + 1), repeat=n)]


def poly_from_vector(basis, vec, n):
    return LaurentPolynomial({e: c for e, c in zip(basis, vec) if c}, n)


def vector_from_poly(f, index):
    """Coefficient vector of f on the monomial index map; raises if f leaves the support."""
    v = [Fraction(0)] * len(index)
    for e, c in f.terms.items():
        try:
            v[index[e]] = c
        except KeyError:
            raise ValueError(f"monomial {e} outside the configured support") from None
    return v
