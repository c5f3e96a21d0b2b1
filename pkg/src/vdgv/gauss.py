"""Gauss sums tau_xi: the character sum over the Frobenius descent, the closed
form through c_A and eta (odd p0), and the Schur-scalar route (p0 = 2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .addpoly import AdditivePolynomial, outer_divide
from .cyclo import CyclotomicInteger, cyclo_ring
from .errors import EvenCharacteristic, HypothesisViolated, NoRoot, NonIntegral, NotACharacter
from .gf import (
    FieldElement,
    build_field,
    embed,
    frobenius,
    in_subfield,
    linear_solve,
    quadratic_character,
    solve_mod,
    to_subfield,
    trace,
    trace_matrix,
)
from .heis import AbelianGroup, CharacterOfA, Heisenberg, HeisenbergElement, IsotropicSubspace, char_order


def _elements(ctx):
    return [ctx.from_index(i) for i in range(ctx.order)]


class PsiFq:
    """t -> exponent of psi_c(Tr_{F_q/F_p}(t)) = zeta_n^((n/p0) Tr_{F_q/F_p0}(c t))."""

    def __init__(self, G: Heisenberg, c: FieldElement):
        self.n = char_order(G.p0)
        self.scale = self.n // G.p0
        self.p0 = G.p0
        self.c = embed(c, G.ctx)
        self.row = trace_matrix(G.ctx, build_field(G.p0, 1))[0]

    def __call__(self, t: FieldElement) -> int:
        v = self.c * t
        s = sum(r * x for r, x in zip(self.row, v.c)) % self.p0
        return self.scale * s % self.n


def _sum_of_roots(n: int, exponents) -> CyclotomicInteger:
    counts = [0] * n
    for k in exponents:
        counts[k % n] += 1
    return CyclotomicInteger.from_poly(n, counts)


# ---------------------------------------------------------------------------
# Frobenius descent t -> (a(t), b(t))
# ---------------------------------------------------------------------------

@dataclass
class FrobeniusDescent:
    a_poly: AdditivePolynomial
    s: int
    table: list  # (t, HeisenbergElement (a(t), b(t))) in index order of t
    root_independent: bool

    def to_json(self) -> dict:
        return {
            "a": self.a_poly.to_json(),
            "s": self.s,
            "table": [[list(t.c), list(h.a.c), list(h.b.c)] for t, h in self.table],
        }


def build_descent(G: Heisenberg, A: IsotropicSubspace) -> FrobeniusDescent:
    ctx, p, k = G.ctx, G.p, G.k
    s = ctx.m // k
    FR = A.FR.with_step(p)
    xq = AdditivePolynomial.from_step(ctx, [-1] + [0] * (s - 1) + [1], p)
    a_poly = outer_divide(xq, FR)
    big = build_field(G.p0, ctx.m * G.p0)
    M = FR.matrix(big)
    roots = []
    for t in ctx.basis():
        sol = linear_solve(M, embed(t, big))
        if sol is None:
            raise NoRoot(f"F_R(x) = {t} has no root in {big!r}")
        roots.append(sol.particular)
    shift = embed(A.basis[0], big) if A.basis else None
    A_set = set(A.elements)
    R_big = G.R

    def b_of(x: FieldElement) -> FieldElement:
        xr = x * R_big(x)
        acc, cur = xr, xr
        for _ in range(s - 1):
            cur = cur ** p
            acc = acc + cur
        return acc - G.fR(x, frobenius(x, ctx.m) - x)

    table = []
    independent = True
    for t in _elements(ctx):
        x = big.zero
        for c, r in zip(t.c, roots):
            if c:
                x = x + r * c
        at = a_poly(t)
        if frobenius(x, ctx.m) - x != embed(at, big):
            raise NoRoot("x^q - x != a(t)")
        bx = b_of(x)
        if not in_subfield(bx, ctx):
            raise NoRoot("b(t) is not in F_q")
        if shift is not None and b_of(x + shift) != bx:
            independent = False
        bt = to_subfield(bx, ctx)
        h = HeisenbergElement(at, bt)
        if at not in A_set or not G.contains(h):
            raise NoRoot(f"(a(t), b(t)) = {h} is not in A_R")
        table.append((t, h))
    if not independent:
        raise NoRoot("b(x, t) depends on the choice of root")
    return FrobeniusDescent(a_poly, s, table, independent)


# ---------------------------------------------------------------------------
# tau routes
# ---------------------------------------------------------------------------

def tau_via_sum(xi: CharacterOfA, group: AbelianGroup, descent: FrobeniusDescent) -> CyclotomicInteger:
    """-sum_t xi(a(t), b(t))."""
    return -_sum_of_roots(xi.n, (xi(group, h) for _, h in descent.table))


def eta_of_xi(xi: CharacterOfA, group: AbelianGroup, descent: FrobeniusDescent, c: FieldElement) -> FieldElement:
    """The eta in F_q with xi(a(t), f_R(a(t),a(t))/2) = psi_{F_q}(eta t); zero is allowed."""
    G = group.G
    ctx = G.ctx
    if G.p0 == 2:
        raise EvenCharacteristic("eta needs odd characteristic")
    psi = PsiFq(G, c)

    def xi_prime(t: FieldElement) -> int:
        a = descent.a_poly(t)
        return xi(group, HeisenbergElement(a, G.fR(a, a) / 2))

    # psi_{F_q}(eta t) is F_p0-linear in eta: match on a basis of F_q
    basis = ctx.basis()
    rows = []
    for t in basis:
        rows.append([psi(eb * t) for eb in basis])
    rhs = [xi_prime(t) for t in basis]
    sol = solve_mod(rows, rhs, G.p0)
    if sol is None:
        raise NotACharacter("xi' does not match any additive character of F_q")
    eta = ctx.element(sol)
    for t, _ in descent.table:
        if xi_prime(t) != psi(eta * t):
            raise NotACharacter("xi' is not additive on F_q")
    return eta


def gauss_sum_G(G: Heisenberg, c: FieldElement) -> CyclotomicInteger:
    """sum_{x in F_q} psi_{F_q}(x^2)."""
    if G.p0 == 2:
        raise EvenCharacteristic("quadratic Gauss sum needs odd characteristic")
    psi = PsiFq(G, c)
    g = _sum_of_roots(psi.n, (psi(x * x) for x in _elements(G.ctx)))
    assert g * g.conj() == G.ctx.order, "G conj(G) != q"
    return g


def tau_closed_form(G: Heisenberg, c: FieldElement, eta: FieldElement, c_A: FieldElement) -> CyclotomicInteger:
    """-psi_{F_q}(-eta^2 / (4 c_A)) * (c_A / q) * G_psi."""
    psi = PsiFq(G, c)
    ring = cyclo_ring(psi.n)
    arg = -(eta * eta) / (c_A * 4)
    return -(ring.zeta(psi(arg)) * quadratic_character(c_A) * gauss_sum_G(G, c))


def twisted_sum_Fq(G: Heisenberg, c: FieldElement) -> CyclotomicInteger:
    """-sum_{x in F_q} psi(Tr_{F_q/F_p}(x R(x)))."""
    psi = PsiFq(G, c)
    return -_sum_of_roots(psi.n, (psi(x * G.R(x)) for x in _elements(G.ctx)))


def tau_via_schur(G: Heisenberg, c: FieldElement) -> CyclotomicInteger:
    """tau = a_psi / p^e when p0 = 2 and H_R lies in F_q^2."""
    if G.p0 != 2:
        raise HypothesisViolated("the Schur route is for p0 = 2")
    if not G.H_in_Fq2():
        raise HypothesisViolated("H_R is not contained in F_q^2")
    a_psi = twisted_sum_Fq(G, c)
    if not a_psi.is_integer():
        raise NonIntegral(f"a_psi = {a_psi!r} is not a rational integer")
    v = a_psi.to_int()
    d = G.p**G.e
    if v % d:
        raise NonIntegral(f"a_psi = {v} is not divisible by p^e = {d}")
    tau = cyclo_ring(a_psi.n)(v // d)
    if tau * tau != G.ctx.order:
        raise NonIntegral(f"tau^2 = {v // d}^2 != q")
    return tau


def check_corollary_2c(tau: CyclotomicInteger, q: int, p0: int, f: int) -> dict:
    out = {"power_4p0": tau ** (4 * p0) == q ** (2 * p0)}
    if f % 2 == 1 and p0 % 4 != 1:
        out["power_2p0"] = tau ** (2 * p0) == -(q**p0)
    return out


def proposition_47(G: Heisenberg, descent: FrobeniusDescent, c_A: FieldElement) -> bool:
    """b(t) - f_R(a(t),a(t))/2 == Tr_{F_q/F_p}(c_A t^2) for all t."""
    for t, h in descent.table:
        lhs = h.b - G.fR(h.a, h.a) / 2
        rhs = embed(trace(c_A * t * t, G.Fp), G.ctx)
        if lhs != rhs:
            return False
    return True
