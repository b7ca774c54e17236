"""Hecke operators and the polynomial families F (ring ASEP), Psi (inhomogeneous
TASEP) and G (open boundary ASEP), built by solving their exchange equations
exactly over the rationals."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .groups import apply_sbar, check_partition_vector, compositions, rotate, signed_compositions
from .poly import LaurentPolynomial, Q, monomials_in_box, monomials_of_degree, monomials_up_to

log = logging.getLogger(__name__)


class SolveError(RuntimeError):
    pass


def f_t(k, kk, t):
    """The weight f_t(k, k'): 1 if k > k', t if k < k', 0 if equal."""
    if k > kk:
        return Fraction(1)
    if k < kk:
        return Q(t)
    return Fraction(0)


# ------------------------------------------------------------- basic operators

def _pair(i, n):
    """Variable pair (a, b) for ring index i: (i, i+1), with 0 -> (n, 1)."""
    i %= n
    return (n, 1) if i == 0 else (i, i + 1)


def divided_difference(f, a, b):
    """(f - s_ab f)/(x_a - x_b), exact; works for Laurent exponents."""
    a -= 1
    b -= 1
    out = {}
    for e, c in f.terms.items():
        p, q = e[a], e[b]
        if p == q:
            continue
        sign = 1
        if p < q:
            p, q, sign = q, p, -1
        base = list(e)
        for k in range(q, p):
            base[a] = k
            base[b] = p + q - 1 - k
            key = tuple(base)
            v = out.get(key, 0) + sign * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return LaurentPolynomial(out, f.n)


def _check_division(f, a, b, quotient):
    # (x_a - x_b) * quotient must reproduce f - s_ab f
    n = f.n
    lhs = (LaurentPolynomial.variable(a, n) - LaurentPolynomial.variable(b, n)) * quotient
    if lhs != f - f.swap(a, b):
        raise ArithmeticError("non-exact division in a Hecke operator")


def hecke_Ti_A(f, i, t, check=False):
    """T_i f = t f - (t x_i - x_{i+1}) (f - sbar_i f)/(x_i - x_{i+1}), ring index i."""
    n = f.n
    a, b = _pair(i, n)
    dd = divided_difference(f, a, b)
    if check:
        _check_division(f, a, b, dd)
    t = Q(t)
    mult = LaurentPolynomial.variable(a, n) * t - LaurentPolynomial.variable(b, n)
    return f * t - mult * dd


def sbar_A(f, i):
    a, b = _pair(i, f.n)
    return f.swap(a, b)


def cyc(f):
    """(c f)(x) = f(x_n, x_1, ..., x_{n-1})."""
    n = f.n
    return f.permute(tuple(list(range(2, n + 1)) + [1]))


def boundary_difference(f, k):
    """(f - f|_{x_k -> 1/x_k})/(1 - x_k^2), exact."""
    k -= 1
    out = {}
    for e, c in f.terms.items():
        a = e[k]
        if a == 0:
            continue
        sign = -1 if a > 0 else 1
        m = abs(a)
        base = list(e)
        for j in range(m):
            base[k] = 2 * j - m
            key = tuple(base)
            v = out.get(key, 0) + sign * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return LaurentPolynomial(out, f.n)


def hecke_typeC(f, i, alpha, beta, t, check=False):
    """Type-C Hecke operators T_0, ..., T_n on Laurent polynomials."""
    n = f.n
    t = Q(t)
    if i == 0 or i == n:
        k = 1 if i == 0 else n
        dl = boundary_difference(f, k)
        if check:
            one_minus = LaurentPolynomial.constant(1, n) - LaurentPolynomial.variable(k, n) * LaurentPolynomial.variable(k, n)
            if one_minus * dl != f - f.invert_variable(k):
                raise ArithmeticError("non-exact division in a boundary Hecke operator")
        xk = LaurentPolynomial.variable(k, n)
        if i == 0:
            return f.invert_variable(1) + xk * dl * ((1 - t) / Q(alpha))
        return f.invert_variable(n) - xk * dl * ((1 - t) / Q(beta))
    if 1 <= i <= n - 1:
        return hecke_Ti_A(f, i, t, check=check)
    raise IndexError(f"type-C index {i} out of range")


def psi_exchange(f, i, a):
    """x_i (x_{i+1} - a)/a * (f - sbar_i f)/(x_i - x_{i+1})."""
    n = f.n
    p, q = _pair(i, n)
    dd = divided_difference(f, p, q)
    a = Q(a)
    mult = LaurentPolynomial.variable(p, n) * (LaurentPolynomial.variable(q, n) - a) / a
    return mult * dd


def evaluate(f, point):
    return f.evaluate(point)


def leading_part_in(f, k):
    return f.leading_part_in(k)


# -------------------------------------------------------------- linear algebra

def _to_qq(x):
    return QQ(x.numerator, x.denominator)


def _from_qq(x):
    return Fraction(int(x.numerator), int(x.denominator))


def nullspace(rows, ncols):
    """Basis (list of Fraction vectors) of the right nullspace of a matrix."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    dm = DomainMatrix([[_to_qq(x) for x in r] for r in rows], (len(rows), ncols), QQ)
    ns = dm.nullspace()
    return [[_from_qq(x) for x in row] for row in ns.to_list()]


def _combine(polys, coeffs, n):
    out = LaurentPolynomial.zero(n)
    for p, c in zip(polys, coeffs):
        if c:
            out = out + p * c
    return out


class _Propagator:
    """Tracks every family member as a linear image of the unknown root
    coefficients and shrinks the unknown space constraint by constraint."""

    def __init__(self, n, root, basis, moves):
        self.n = n
        self.root = root
        self.images = {root: [LaurentPolynomial.monomial(e) for e in basis]}
        self.basis = basis
        self.tree = {}
        queue = deque([root])
        while queue:
            mu = queue.popleft()
            for nu, op in moves(mu):
                if nu not in self.images:
                    self.images[nu] = [op(p) for p in self.images[mu]]
                    self.tree[nu] = mu
                    queue.append(nu)
        self.dim = len(basis)
        # root coefficient vectors, one per remaining free direction
        self.root_vectors = [[Fraction(int(i == j)) for i in range(len(basis))] for j in range(len(basis))]

    def impose(self, residuals):
        """residuals: list (one per free direction) of polynomials that must vanish."""
        mons = sorted({e for r in residuals for e in r.terms})
        if not mons:
            return
        rows = [[r.terms.get(e, Fraction(0)) for r in residuals] for e in mons]
        ker = nullspace(rows, self.dim)
        self._restrict(ker)

    def _restrict(self, ker):
        if len(ker) == self.dim:
            return
        self.images = {mu: [_combine(imgs, v, self.n) for v in ker] for mu, imgs in self.images.items()}
        self.root_vectors = [
            [sum(v[k] * self.root_vectors[k][c] for k in range(self.dim)) for c in range(len(self.basis))]
            for v in ker
        ]
        self.dim = len(ker)


@dataclass
class PolyFamily:
    """A solved family indexed by compositions or signed compositions."""

    kind: str
    lam: tuple
    params: dict
    polys: dict
    root: tuple
    notes: list = field(default_factory=list)

    def __getitem__(self, mu):
        return self.polys[tuple(mu)]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def states(self):
        return sorted(self.polys)

    def total(self, states=None):
        """P_lambda, Pi_lambda or K_lambda: the sum over the index set."""
        n = len(self.lam)
        out = LaurentPolynomial.zero(n)
        for mu in (states or self.states()):
            out = out + self.polys[mu]
        return out

    def ratios_at(self, point):
        vals = {mu: f.evaluate(point) for mu, f in self.polys.items()}
        z = sum(vals.values())
        return {mu: v / z for mu, v in vals.items()}

    def to_text(self):
        lines = [f"# {self.kind} family lambda={self.lam} params={ {k: str(v) for k, v in self.params.items()} }"]
        for mu in self.states():
            lines.append(f"{mu}: {self.polys[mu].to_text()}")
        return "\n".join(lines) + "\n"


def _finish(prop, norm_monomial, kind, lam, params):
    if prop.dim == 0:
        raise SolveError(f"{kind}: exchange equations have only the zero solution for lambda={lam}")
    if prop.dim > 1:
        raise SolveError(f"{kind}: solution space has dimension {prop.dim} for lambda={lam}")
    root_poly = prop.images[prop.root][0]
    c = root_poly.coefficient(norm_monomial)
    if c == 0:
        raise SolveError(f"{kind}: normalizing coefficient vanishes")
    polys = {mu: imgs[0] / c for mu, imgs in prop.images.items()}
    return PolyFamily(kind, tuple(lam), params, polys, prop.root)


# ------------------------------------------------------------------- F family

def _F_residuals(prop, mu, i, t):
    n = prop.n
    a, b = (n - 1, 0) if i == 0 else (i - 1, i)
    imgs = prop.images[mu]
    if mu[a] < mu[b]:
        nu = apply_sbar(i, mu)
        return [hecke_Ti_A(p, i, t) - q for p, q in zip(imgs, prop.images[nu])]
    if mu[a] == mu[b]:
        return [sbar_A(p, i) - p for p in imgs]
    return None


def build_F_family(lam, t):
    """ASEP polynomials F_mu(x; t) for mu in S_lambda, t a rational value."""
    lam = check_partition_vector(lam)
    n = len(lam)
    t = Q(t)
    deg = n * lam[-1] - sum(lam)
    basis = monomials_of_degree(n, deg)
    norm = tuple(lam[-1] - x for x in lam)

    def moves(mu):
        for i in range(1, n):
            if mu[i - 1] < mu[i]:
                yield apply_sbar(i, mu), (lambda f, i=i: hecke_Ti_A(f, i, t))

    prop = _Propagator(n, lam, basis, moves)
    states = compositions(lam)
    if set(prop.images) != set(states):
        raise SolveError("sorting moves did not reach every composition")
    # cheap symmetric constraints first, then the wrap-around and cyclic ones
    for mu in states:
        for i in range(n):
            res = _F_residuals(prop, mu, i, t)
            if res is not None:
                prop.impose(res)
        prop.impose([cyc(q) - p for p, q in zip(prop.images[mu], prop.images[rotate(mu)])])
    try:
        fam = _finish(prop, norm, "F", lam, {"t": t})
    except SolveError:
        log.warning("reduced F solve failed for %s, falling back to the full system", lam)
        return build_F_family_full(lam, t)
    return fam


def build_F_family_full(lam, t):
    """Same family, solved with every F_mu's coefficients as unknowns at once."""
    lam = check_partition_vector(lam)
    n = len(lam)
    t = Q(t)
    deg = n * lam[-1] - sum(lam)
    basis = monomials_of_degree(n, deg)
    states = compositions(lam)
    nb = len(basis)
    col = {(mu, e): k * nb + j for k, mu in enumerate(states) for j, e in enumerate(basis)}
    ncols = len(col)
    rows = []

    def add_rows(terms_by_mon):
        for coeffs in terms_by_mon.values():
            row = [Fraction(0)] * ncols
            for c, v in coeffs.items():
                row[c] += v
            if any(row):
                rows.append(row)

    for mu in states:
        for i in range(n):
            a, b = (n - 1, 0) if i == 0 else (i - 1, i)
            acc = {}
            if mu[a] < mu[b]:
                nu = apply_sbar(i, mu)
                for e in basis:
                    img = hecke_Ti_A(LaurentPolynomial.monomial(e), i, t)
                    for m, c in img.terms.items():
                        acc.setdefault(m, {}).setdefault(col[(mu, e)], 0)
                        acc[m][col[(mu, e)]] += c
                    acc.setdefault(e, {}).setdefault(col[(nu, e)], 0)
                    acc[e][col[(nu, e)]] -= 1
            elif mu[a] == mu[b]:
                for e in basis:
                    img = sbar_A(LaurentPolynomial.monomial(e), i)
                    for m, c in img.terms.items():
                        acc.setdefault(m, {}).setdefault(col[(mu, e)], 0)
                        acc[m][col[(mu, e)]] += c
                    acc.setdefault(e, {}).setdefault(col[(mu, e)], 0)
                    acc[e][col[(mu, e)]] -= 1
            add_rows(acc)
        acc = {}
        cm = rotate(mu)
        for e in basis:
            img = cyc(LaurentPolynomial.monomial(e))
            for m, c in img.terms.items():
                acc.setdefault(m, {}).setdefault(col[(cm, e)], 0)
                acc[m][col[(cm, e)]] += c
            acc.setdefault(e, {}).setdefault(col[(mu, e)], 0)
            acc[e][col[(mu, e)]] -= 1
        add_rows(acc)
    ker = nullspace(rows, ncols)
    if len(ker) != 1:
        raise SolveError(f"full F system has nullity {len(ker)} for lambda={lam}")
    v = ker[0]
    polys = {mu: LaurentPolynomial({e: v[col[(mu, e)]] for e in basis}, n) for mu in states}
    c = polys[lam].coefficient(tuple(lam[-1] - x for x in lam))
    if c == 0:
        raise SolveError("normalizing coefficient vanishes")
    polys = {mu: f / c for mu, f in polys.items()}
    return PolyFamily("F", lam, {"t": t}, polys, lam, ["full-system"])


def qkz_residuals(fam):
    """All exchange-equation residuals of an F family (list of nonzero ones)."""
    t = fam.params["t"]
    n = len(fam.lam)
    bad = []
    for mu, f in fam.polys.items():
        for i in range(n):
            a, b = (n - 1, 0) if i == 0 else (i - 1, i)
            if mu[a] < mu[b]:
                r = hecke_Ti_A(f, i, t, check=True) - fam.polys[apply_sbar(i, mu)]
            elif mu[a] == mu[b]:
                r = sbar_A(f, i) - f
            else:
                continue
            if r:
                bad.append(("qKZ1" if mu[a] < mu[b] else "qKZ2", mu, i, r))
        r = cyc(fam.polys[rotate(mu)]) - f
        if r:
            bad.append(("qKZ3", mu, None, r))
    return bad


def rewriting_identity_residual(fam, nu, i):
    """Residual of the local rewriting identity for F (denominators cleared)."""
    t = fam.params["t"]
    n = len(fam.lam)
    a, b = _pair(i, n)
    ia, ib = a - 1, b - 1
    xa = LaurentPolynomial.variable(a, n)
    xb = LaurentPolynomial.variable(b, n)
    den = xb * t - xa
    num = xb - xa
    F = fam.polys
    lhs = den * F[nu]
    rhs = (den - num * f_t(nu[ia], nu[ib], t)) * sbar_A(F[nu], i) \
        + num * f_t(nu[ib], nu[ia], t) * sbar_A(F[apply_sbar(i, nu)], i)
    return lhs - rhs


# ----------------------------------------------------------------- Psi family

def _species_rate(a, k):
    if isinstance(a, dict):
        return Q(a[k])
    return Q(a[k - 1])


def build_Psi_family(lam, a, max_degree=12):
    """Inhomogeneous TASEP polynomials; a[k-1] (or a[k] for a dict) is a_k.

    Normalization: the lexicographically largest monomial of Psi_lambda has
    coefficient 1.
    """
    lam = check_partition_vector(lam)
    n = len(lam)
    for k in set(lam):
        if k >= 1 and not 0 < _species_rate(a, k) < 1:
            raise ValueError(f"a_{k} must lie in (0,1)")
    states = compositions(lam)

    def moves(mu):
        for i in range(1, n):
            if mu[i - 1] < mu[i]:
                rate = _species_rate(a, mu[i])
                yield apply_sbar(i, mu), (lambda f, i=i, rate=rate: psi_exchange(f, i, rate))

    for D in range(max_degree + 1):
        basis = monomials_up_to(n, D)
        prop = _Propagator(n, lam, basis, moves)
        for mu in states:
            for i in range(n):
                ia, ib = (n - 1, 0) if i == 0 else (i - 1, i)
                imgs = prop.images[mu]
                if mu[ia] < mu[ib]:
                    rate = _species_rate(a, mu[ib])
                    nu = apply_sbar(i, mu)
                    prop.impose([psi_exchange(p, i, rate) - q for p, q in zip(imgs, prop.images[nu])])
                elif mu[ia] == mu[ib]:
                    prop.impose([sbar_A(p, i) - p for p in imgs])
                if prop.dim == 0:
                    break
            if prop.dim == 0:
                break
            prop.impose([cyc(q) - p for p, q in zip(prop.images[mu], prop.images[rotate(mu)])])
        if prop.dim == 0:
            continue
        if prop.dim > 1:
            raise SolveError(f"Psi solution space has dimension {prop.dim} at degree {D}")
        root_poly = prop.images[lam][0]
        top = max(root_poly.terms)
        c = root_poly.terms[top]
        polys = {mu: imgs[0] / c for mu, imgs in prop.images.items()}
        params = {"a": tuple(_species_rate(a, k) for k in range(1, max(lam) + 1))}
        return PolyFamily("Psi", lam, params, polys, lam, [f"degree bound {D}"])
    raise SolveError(f"no Psi family up to degree {max_degree}")


def psi_residuals(fam):
    n = len(fam.lam)
    a = fam.params["a"]
    bad = []
    for mu, f in fam.polys.items():
        for i in range(n):
            ia, ib = (n - 1, 0) if i == 0 else (i - 1, i)
            if mu[ia] < mu[ib]:
                r = psi_exchange(f, i, a[mu[ib] - 1]) - fam.polys[apply_sbar(i, mu)]
            elif mu[ia] == mu[ib]:
                r = sbar_A(f, i) - f
            else:
                continue
            if r:
                bad.append((mu, i, r))
        r = cyc(fam.polys[rotate(mu)]) - f
        if r:
            bad.append((mu, "c", r))
    return bad


def leading_ratio(num, den, point_with_R):
    """lim_{R->oo} num(point)/den(point) where entries equal to the string 'R'
    are the large parameter: ratio of leading coefficients in R."""
    return _lead_coefficient(num, point_with_R) / _lead_coefficient(den, point_with_R)


def _lead_coefficient(f, point):
    """Leading (degree, coefficient) in R of f evaluated at point."""
    fixed = {k + 1: Q(x) for k, x in enumerate(point) if not (isinstance(x, str) and x == "R")}
    free = [k for k, x in enumerate(point) if isinstance(x, str) and x == "R"]
    g = f.substitute(fixed)
    by_deg = {}
    for e, c in g.terms.items():
        d = sum(e[k] for k in free)
        by_deg[d] = by_deg.get(d, 0) + c
    by_deg = {d: c for d, c in by_deg.items() if c}
    if not by_deg:
        raise ZeroDivisionError("polynomial vanishes identically at this point")
    top = max(by_deg)
    return _Lead(top, by_deg[top])


class _Lead:
    __slots__ = ("deg", "coef")

    def __init__(self, deg, coef):
        self.deg = deg
        self.coef = coef

    def __truediv__(self, other):
        if self.deg > other.deg:
            raise OverflowError("ratio diverges as R -> oo")
        if self.deg < other.deg:
            return Fraction(0)
        return self.coef / other.coef


# ------------------------------------------------------------------- G family

def build_G_family(lam, alpha, beta, t, box=None):
    """Open boundary ASEP polynomials on S_lambda^{+-}.

    At q = 1 the exchange equations are preserved by multiplying the whole
    family with any Laurent polynomial invariant under permutations and
    inversions of the variables, so the solution is taken in the smallest
    box [-b, b]^n (b = 0, 1, ..., box; default box = lambda_n) where the
    solution space is nonzero, and must be one-dimensional there.

    Scale: the coefficient of x_1^{lambda_n} ... x_n^{lambda_1} in G_lambda
    is 1 when that monomial occurs; otherwise the lexicographically largest
    monomial of G_lambda gets coefficient 1 (recorded in ``notes``).
    """
    lam = check_partition_vector(lam)
    n = len(lam)
    alpha, beta, t = Q(alpha), Q(beta), Q(t)
    box = lam[-1] if box is None else box
    norm = tuple(reversed(lam))
    states = signed_compositions(lam)

    def op(i):
        return lambda f: hecke_typeC(f, i, alpha, beta, t)

    def moves(mu):
        for i in (0, n):
            nu = apply_sbar(i, mu, "C")
            if nu != mu:
                yield nu, op(i)
        for i in range(1, n):
            if mu[i - 1] < mu[i]:
                yield apply_sbar(i, mu, "C"), op(i)

    for b in range(box + 1):
        prop = _Propagator(n, lam, monomials_in_box(n, -b, b), moves)
        if set(prop.images) != set(states):
            raise SolveError("exchange moves did not reach every signed composition")
        for mu in states:
            for i in range(n + 1):
                imgs = prop.images[mu]
                if i in (0, n) or mu[i - 1] < mu[i]:
                    nu = apply_sbar(i, mu, "C")
                    prop.impose([hecke_typeC(p, i, alpha, beta, t) - q for p, q in zip(imgs, prop.images[nu])])
                elif mu[i - 1] == mu[i]:
                    prop.impose([p.swap(i, i + 1) - p for p in imgs])
                if prop.dim == 0:
                    break
            if prop.dim == 0:
                break
        if prop.dim == 0:
            continue
        if prop.dim > 1:
            raise SolveError(f"G: solution space has dimension {prop.dim} in box {b} for lambda={lam}")
        root_poly = prop.images[lam][0]
        c = root_poly.coefficient(norm)
        notes = [f"support box {b}"]
        if c == 0:
            c = root_poly.terms[max(root_poly.terms)]
            notes.append("normalized by lex-largest monomial")
        polys = {mu: imgs[0] / c for mu, imgs in prop.images.items()}
        return PolyFamily("G", lam, {"alpha": alpha, "beta": beta, "t": t}, polys, lam, notes)
    raise SolveError(f"G: no solution with Laurent support inside [-{box}, {box}]^{n} for lambda={lam}")


def ckz_residuals(fam):
    n = len(fam.lam)
    al, be, t = fam.params["alpha"], fam.params["beta"], fam.params["t"]
    bad = []
    for mu, f in fam.polys.items():
        for i in (0, n):
            r = hecke_typeC(f, i, al, be, t, check=True) - fam.polys[apply_sbar(i, mu, "C")]
            if r:
                bad.append((mu, i, r))
        for i in range(1, n):
            if mu[i - 1] < mu[i]:
                r = hecke_typeC(f, i, al, be, t, check=True) - fam.polys[apply_sbar(i, mu, "C")]
            elif mu[i - 1] == mu[i]:
                r = f.swap(i, i + 1) - f
            else:
                continue
            if r:
                bad.append((mu, i, r))
    return bad


def rewriting_identity_residual_C(fam, nu, i):
    """Type-C analogue of the local rewriting identity, 1 <= i <= n-1."""
    t = fam.params["t"]
    n = len(fam.lam)
    xa = LaurentPolynomial.variable(i, n)
    xb = LaurentPolynomial.variable(i + 1, n)
    den = xb * t - xa
    num = xb - xa
    G = fam.polys
    lhs = den * G[nu]
    rhs = (den - num * f_t(nu[i - 1], nu[i], t)) * G[nu].swap(i, i + 1) \
        + num * f_t(nu[i], nu[i - 1], t) * G[apply_sbar(i, nu, "C")].swap(i, i + 1)
    return lhs - rhs
