"""Additive polynomials, the twisted bilinear form f_R, and sparse polynomials.

Everything is stored on the p0-power scale: an :class:`AdditivePolynomial`
holds the coefficient of x^(p0^j) at position j, whatever its nominal step p.
That keeps composition and division uniform when p = p0^k with k > 1.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import NoSuchFactor, NotReduced, RootsNotInFp
from .gf import (
    FieldCtx,
    FieldElement,
    build_field,
    embed,
    frobenius,
    nullspace_mod,
)


def _log(p0: int, p: int) -> int:
    k, v = 0, 1
    while v < p:
        v *= p0
        k += 1
    if v != p:
        raise ValueError(f"{p} is not a power of {p0}")
    return k


def _frob_pow(x: FieldElement, j: int) -> FieldElement:
    """x^(p0^j) without reducing j modulo the field degree (same value anyway)."""
    return frobenius(x, j)


def _powers(x: FieldElement, count: int) -> list[FieldElement]:
    out = [x]
    p0 = x.ctx.p0
    for _ in range(count - 1):
        out.append(out[-1] ** p0)
    return out


class AdditivePolynomial:
    """sum_j c_j x^(p0^j) with coefficients in ``ctx``.

    ``step`` is the nominal p (a power of p0); ``e`` is measured against it.
    """

    def __init__(self, ctx: FieldCtx, coeffs: Sequence[FieldElement], step: int | None = None):
        c = [x if isinstance(x, FieldElement) else ctx.from_int(x) for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)
        self.step = step or ctx.p0
        self._k = _log(ctx.p0, self.step)
        self._emb: dict = {}

    # construction ------------------------------------------------------------
    @classmethod
    def from_step(cls, ctx: FieldCtx, coeffs: Sequence, p: int) -> AdditivePolynomial:
        """sum_i coeffs[i] x^(p^i)."""
        k = _log(ctx.p0, p)
        dense = [ctx.zero] * (k * (len(coeffs) - 1) + 1 if coeffs else 0)
        for i, a in enumerate(coeffs):
            dense[k * i] = a if isinstance(a, FieldElement) else ctx.from_int(a)
        return cls(ctx, dense, p)

    @classmethod
    def monomial(cls, ctx: FieldCtx, j: int, coeff=1, step: int | None = None) -> AdditivePolynomial:
        c = coeff if isinstance(coeff, FieldElement) else ctx.from_int(coeff)
        return cls(ctx, [ctx.zero] * j + [c], step)

    @classmethod
    def from_kernel_basis(cls, ctx: FieldCtx, basis: Sequence[FieldElement], step: int | None = None) -> AdditivePolynomial:
        """The monic prod_{v in span}(x - v) for an F_{p0}-independent basis in ``ctx``."""
        F = cls(ctx, [ctx.one], step)
        p0 = ctx.p0
        for v in basis:
            w = F(v)
            if w.is_zero():
                raise ValueError("basis is linearly dependent")
            # prod_c (F(x) - c F(v)) = F(x)^p0 - F(v)^(p0-1) F(x)
            F = AdditivePolynomial.monomial(ctx, 1, 1, step).compose(F) - F.scale(w ** (p0 - 1))
        return cls(ctx, F.coeffs, step)

    # basic properties ----------------------------------------------------------
    @property
    def top(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return self.ctx.p0**self.top if self.coeffs else 0

    @property
    def e(self) -> int:
        if self.top % self._k:
            raise ValueError(f"degree is not a power of the step {self.step}")
        return self.top // self._k

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int) -> FieldElement:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else self.ctx.zero

    def step_coeffs(self) -> list[FieldElement]:
        """a_0..a_e against the nominal step; raises if a term sits off the grid."""
        k = self._k
        for j, c in enumerate(self.coeffs):
            if j % k and not c.is_zero():
                raise ValueError(f"x^({self.ctx.p0}^{j}) is not a power of x^{self.step}")
        return [self.coeffs[j] for j in range(0, len(self.coeffs), k)]

    def with_step(self, step: int) -> AdditivePolynomial:
        return AdditivePolynomial(self.ctx, self.coeffs, step)

    def __eq__(self, other):
        if not isinstance(other, AdditivePolynomial):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c.c}*x^{self.ctx.p0}^{j}" for j, c in enumerate(self.coeffs) if not c.is_zero()]
        return "Add(" + (" + ".join(terms) or "0") + ")"

    def to_json(self) -> dict:
        return {"step": self.step, "coeffs": [list(c.c) for c in self.step_coeffs()]}

    # arithmetic ----------------------------------------------------------------
    def _same(self, other: AdditivePolynomial) -> None:
        if other.ctx is not self.ctx:
            raise TypeError("additive polynomials over different fields")

    def __add__(self, other: AdditivePolynomial) -> AdditivePolynomial:
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return AdditivePolynomial(self.ctx, [self.coeff(j) + other.coeff(j) for j in range(n)], _common_step(self, other))

    def __sub__(self, other: AdditivePolynomial) -> AdditivePolynomial:
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return AdditivePolynomial(self.ctx, [self.coeff(j) - other.coeff(j) for j in range(n)], _common_step(self, other))

    def __neg__(self):
        return AdditivePolynomial(self.ctx, [-c for c in self.coeffs], self.step)

    def scale(self, c: FieldElement) -> AdditivePolynomial:
        return AdditivePolynomial(self.ctx, [c * x for x in self.coeffs], self.step)

    def compose(self, inner: AdditivePolynomial) -> AdditivePolynomial:
        """self(inner(x))."""
        self._same(inner)
        if self.is_zero() or inner.is_zero():
            return AdditivePolynomial(self.ctx, [], _common_step(self, inner))
        out = [self.ctx.zero] * (self.top + inner.top + 1)
        for i, g in enumerate(self.coeffs):
            if g.is_zero():
                continue
            for j, f in enumerate(inner.coeffs):
                if not f.is_zero():
                    out[i + j] = out[i + j] + g * _frob_pow(f, i)
        return AdditivePolynomial(self.ctx, out, _common_step(self, inner))

    def embedded(self, target: FieldCtx) -> tuple[FieldElement, ...]:
        got = self._emb.get(target)
        if got is None:
            got = tuple(embed(c, target) for c in self.coeffs)
            self._emb[target] = got
        return got

    def __call__(self, x: FieldElement) -> FieldElement:
        coeffs = self.embedded(x.ctx)
        acc = x.ctx.zero
        cur = x
        for j, c in enumerate(coeffs):
            if j:
                cur = cur ** x.ctx.p0
            if not c.is_zero():
                acc = acc + c * cur
        return acc

    def matrix(self, ambient: FieldCtx) -> list[list[int]]:
        """F_{p0}-matrix of evaluation on ``ambient`` (which must contain the coefficients)."""
        return ambient.matrix_of(self)

    def to_sparse(self) -> SparsePoly:
        p0 = self.ctx.p0
        return SparsePoly(self.ctx, {p0**j: c for j, c in enumerate(self.coeffs) if not c.is_zero()})


def _common_step(f: AdditivePolynomial, g: AdditivePolynomial) -> int:
    return f.ctx.p0 ** math.gcd(f._k, g._k)


def outer_divide(h: AdditivePolynomial, f: AdditivePolynomial) -> AdditivePolynomial:
    """g with h = g o f.

    Back-substitution from the top coefficient down (the triangular structure
    of composition), then an exact composition check.
    """
    h._same(f)
    if f.is_zero():
        raise NoSuchFactor("division by the zero polynomial")
    T, D = f.top, h.top - f.top
    if D < 0:
        raise NoSuchFactor("deg f exceeds deg h")
    ctx = h.ctx
    g = [ctx.zero] * (D + 1)
    lead = f.coeffs[T]
    for i in range(D, -1, -1):
        acc = h.coeff(i + T)
        for i2 in range(i + 1, D + 1):
            j = i + T - i2
            if 0 <= j <= T and not g[i2].is_zero():
                acc = acc - g[i2] * _frob_pow(f.coeff(j), i2)
        g[i] = acc / _frob_pow(lead, i)
    res = AdditivePolynomial(ctx, g, h.step if h._k % f._k == 0 else ctx.p0)
    if res.compose(f).coeffs != h.coeffs:
        raise NoSuchFactor("h is not of the form g o f")
    return res


def inner_divide(h: AdditivePolynomial, g: AdditivePolynomial) -> AdditivePolynomial:
    """f with h = g o f (top-down, inverting Frobenius on the leading term)."""
    h._same(g)
    if g.is_zero():
        raise NoSuchFactor("division by the zero polynomial")
    T, D = g.top, h.top - g.top
    if D < 0:
        raise NoSuchFactor("deg g exceeds deg h")
    ctx = h.ctx
    f = [ctx.zero] * (D + 1)
    lead = g.coeffs[T]
    for j in range(D, -1, -1):
        acc = h.coeff(j + T)
        for i in range(T):
            j2 = j + T - i
            if j2 <= D and not f[j2].is_zero():
                acc = acc - g.coeff(i) * _frob_pow(f[j2], i)
        f[j] = frobenius(acc / lead, -T)
    res = AdditivePolynomial(ctx, f, h.step if h._k % g._k == 0 else ctx.p0)
    if g.compose(res).coeffs != h.coeffs:
        raise NoSuchFactor("h is not of the form g o f")
    return res


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

def kernel(f: AdditivePolynomial, ambient: FieldCtx) -> tuple[list[FieldElement], bool]:
    """F_{p0}-basis of ker(f) inside ``ambient`` and whether it is the full kernel."""
    p0 = ambient.p0
    big = ambient
    if ambient.m % f.ctx.m:
        big = build_field(p0, math.lcm(ambient.m, f.ctx.m), force=True)
    imgs = [f(embed(b, big)).c for b in ambient.basis()]
    M = [[imgs[j][i] for j in range(ambient.m)] for i in range(big.m)]
    basis = [ambient.element(v) for v in nullspace_mod(M, p0, ambient.m)]
    return basis, p0 ** len(basis) == f.degree


def splitting_degree(f: AdditivePolynomial, force: bool = False) -> int:
    """Smallest n with ker(f) inside F_{q^n}, q = |f.ctx|."""
    if f.coeff(0).is_zero():
        raise NotReduced("f is not separable")
    n = 1
    while True:
        ctx = build_field(f.ctx.p0, f.ctx.m * n, force=force)
        if kernel(f, ctx)[1]:
            return n
        n += 1


def validate_delta(delta: AdditivePolynomial, p: int) -> AdditivePolynomial:
    """Check delta is reduced with all roots in F_p; return nu with delta o nu = y^p - y."""
    if delta.is_zero() or delta.coeff(0).is_zero():
        raise NotReduced("delta must have nonzero linear coefficient")
    ctx = delta.ctx
    k = _log(ctx.p0, p)
    if ctx.m % k:
        raise NotReduced(f"F_{p} is not contained in the coefficient field")
    _, full = kernel(delta, build_field(ctx.p0, k))
    if not full:
        raise RootsNotInFp("delta has roots outside F_p")
    h = AdditivePolynomial.from_step(ctx, [-1, 1], p)
    return inner_divide(h, delta)


# ---------------------------------------------------------------------------
# f_R and E_R
# ---------------------------------------------------------------------------

class TwistedBiForm:
    """sum c_{uv} x^(p0^u) y^(p0^v); keys are p0-exponents."""

    def __init__(self, ctx: FieldCtx, terms: dict | None = None):
        self.ctx = ctx
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    def add_term(self, u: int, v: int, c: FieldElement) -> None:
        cur = self.terms.get((u, v), self.ctx.zero) + c
        if cur.is_zero():
            self.terms.pop((u, v), None)
        else:
            self.terms[(u, v)] = cur

    def __eq__(self, other):
        if not isinstance(other, TwistedBiForm):
            return NotImplemented
        return self.terms == other.terms

    def __sub__(self, other: TwistedBiForm) -> TwistedBiForm:
        out = TwistedBiForm(self.ctx, dict(self.terms))
        for (u, v), c in other.terms.items():
            out.add_term(u, v, -c)
        return out

    def frob(self, k: int) -> TwistedBiForm:
        """The form raised to the p0^k-th power."""
        return TwistedBiForm(self.ctx, {(u + k, v + k): _frob_pow(c, k) for (u, v), c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def _max(self) -> tuple[int, int]:
        if not self.terms:
            return 0, 0
        return max(u for u, _ in self.terms) + 1, max(v for _, v in self.terms) + 1

    def __call__(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if x.ctx is not y.ctx:
            raise TypeError("arguments in different fields")
        ctx = x.ctx
        if not self.terms:
            return ctx.zero
        mu, mv = self._max()
        xs, ys = _powers(x, mu), _powers(y, mv)
        acc = ctx.zero
        for (u, v), c in self.terms.items():
            acc = acc + embed(c, ctx) * xs[u] * ys[v]
        return acc

    def partial_x(self, y: FieldElement, step: int | None = None) -> AdditivePolynomial:
        """x -> f(x, y) as an additive polynomial over y's field."""
        ctx = y.ctx
        mu, mv = self._max()
        ys = _powers(y, max(mv, 1))
        coeffs = [ctx.zero] * mu
        for (u, v), c in self.terms.items():
            coeffs[u] = coeffs[u] + embed(c, ctx) * ys[v]
        return AdditivePolynomial(ctx, coeffs, step)

    def partial_y(self, x: FieldElement, step: int | None = None) -> AdditivePolynomial:
        ctx = x.ctx
        mu, mv = self._max()
        xs = _powers(x, max(mu, 1))
        coeffs = [ctx.zero] * mv
        for (u, v), c in self.terms.items():
            coeffs[v] = coeffs[v] + embed(c, ctx) * xs[u]
        return AdditivePolynomial(ctx, coeffs, step)

    def to_json(self) -> list:
        return [[u, v, list(c.c)] for (u, v), c in sorted(self.terms.items())]


def make_ER(R: AdditivePolynomial) -> AdditivePolynomial:
    """E_R = R^(p^e) + sum_i (a_i x)^(p^(e-i))."""
    ctx, p = R.ctx, R.step
    a = R.step_coeffs()
    e = len(a) - 1
    k = R._k
    c = [ctx.zero] * (2 * e + 1)
    for i, ai in enumerate(a):
        c[i + e] = c[i + e] + _frob_pow(ai, k * e)
        c[e - i] = c[e - i] + _frob_pow(ai, k * (e - i))
    return AdditivePolynomial.from_step(ctx, c, p)


def make_fR(R: AdditivePolynomial) -> TwistedBiForm:
    a = R.step_coeffs()
    e = len(a) - 1
    k = R._k
    form = TwistedBiForm(R.ctx)
    for i in range(e):
        # (a_i x^(p^i) y)^(p^j), j < e - i
        for j in range(e - i):
            form.add_term(k * (i + j), k * j, -_frob_pow(a[i], k * j))
        # (x R(y))^(p^i)
        for l, al in enumerate(a):
            form.add_term(k * i, k * (l + i), -_frob_pow(al, k * i))
    return form


def verify_identity_a(R: AdditivePolynomial) -> bool:
    """f^p - f == -x^(p^e) E_R(y) + x R(y) + y R(x), coefficient by coefficient."""
    f = make_fR(R)
    k = R._k
    lhs = f.frob(k) - f
    E = make_ER(R)
    e = R.e
    rhs = TwistedBiForm(R.ctx)
    for j, c in enumerate(E.coeffs):
        rhs.add_term(k * e, j, -c)
    for j, c in enumerate(R.coeffs):
        rhs.add_term(0, j, c)
        rhs.add_term(j, 0, c)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Sparse univariate polynomials (for Delta, x R(x), u R_1(u), ...)
# ---------------------------------------------------------------------------

class SparsePoly:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: dict | None = None):
        self.ctx = ctx
        self.terms = {n: c for n, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def monomial(cls, ctx: FieldCtx, n: int, c=1) -> SparsePoly:
        c = c if isinstance(c, FieldElement) else ctx.from_int(c)
        return cls(ctx, {n: c})

    @classmethod
    def constant(cls, c: FieldElement) -> SparsePoly:
        return cls(c.ctx, {0: c})

    def __add__(self, other: SparsePoly) -> SparsePoly:
        out = dict(self.terms)
        for n, c in other.terms.items():
            out[n] = out[n] + c if n in out else c
        return SparsePoly(self.ctx, out)

    def __neg__(self):
        return SparsePoly(self.ctx, {n: -c for n, c in self.terms.items()})

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if isinstance(other, FieldElement):
            return SparsePoly(self.ctx, {n: c * other for n, c in self.terms.items()})
        out: dict = {}
        for n1, c1 in self.terms.items():
            for n2, c2 in other.terms.items():
                n = n1 + n2
                out[n] = out[n] + c1 * c2 if n in out else c1 * c2
        return SparsePoly(self.ctx, out)

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return "Sparse(" + " + ".join(f"{c.c}*x^{n}" for n, c in sorted(self.terms.items())) + ")"

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def frob(self, k: int) -> SparsePoly:
        """self(x)^(p0^k)."""
        q = self.ctx.p0**k
        return SparsePoly(self.ctx, {n * q: _frob_pow(c, k) for n, c in self.terms.items()})

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = x.ctx.zero
        for n, c in self.terms.items():
            acc = acc + embed(c, x.ctx) * x**n
        return acc

    def _digit_product(self, n: int, factor) -> SparsePoly:
        out = SparsePoly.monomial(self.ctx, 0)
        p0, i = self.ctx.p0, 0
        while n:
            n, d = divmod(n, p0)
            for _ in range(d):
                out = out * factor(i)
            i += 1
        return out

    def compose_additive(self, U: AdditivePolynomial) -> SparsePoly:
        """self(U(x)); powers of U split along base-p0 digits of each exponent."""
        base = U.to_sparse()
        cache: dict = {}

        def factor(i):
            if i not in cache:
                cache[i] = base.frob(i)
            return cache[i]

        out = SparsePoly(self.ctx)
        for n, c in self.terms.items():
            out = out + self._digit_product(n, factor) * c
        return out

    def shift(self, a: FieldElement) -> SparsePoly:
        """self(x + a)."""
        p0 = self.ctx.p0
        cache: dict = {}

        def factor(i):
            if i not in cache:
                cache[i] = SparsePoly(self.ctx, {p0**i: self.ctx.one, 0: _frob_pow(a, i)})
            return cache[i]

        out = SparsePoly(self.ctx)
        for n, c in self.terms.items():
            out = out + self._digit_product(n, factor) * c
        return out

    def to_json(self) -> list:
        return [[n, list(c.c)] for n, c in sorted(self.terms.items())]


def solve_field(columns: Sequence[SparsePoly], target: SparsePoly) -> list[FieldElement] | None:
    """Coefficients r with sum r_k columns[k] == target, or None (unique solution expected)."""
    ctx = target.ctx
    exps = sorted(set(target.terms).union(*[c.terms for c in columns]))
    rows = [[col.terms.get(n, ctx.zero) for col in columns] + [target.terms.get(n, ctx.zero)] for n in exps]
    ncols = len(columns)
    piv_cols = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(not rows[i][ncols].is_zero() for i in range(r, len(rows))):
        return None
    sol = [ctx.zero] * ncols
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][ncols]
    return sol


def x_times(f: AdditivePolynomial) -> SparsePoly:
    """x * f(x) as a sparse polynomial."""
    return SparsePoly.monomial(f.ctx, 1) * f.to_sparse()


