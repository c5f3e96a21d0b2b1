"""The Heisenberg group H_R, the pairing omega_R, rational maximal isotropic
subspaces, the abelian group A_R and its characters over a central character.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field

from .addpoly import AdditivePolynomial, TwistedBiForm, kernel, make_ER, make_fR, outer_divide, splitting_degree, _log
from .errors import (
    CentralCharacterTrivial,
    EvenCharacteristic,
    NoRationalLift,
    NoRationalMaximalIsotropic,
    NotASubfield,
    NotInGroup,
    NotInVR,
    PointNotOnCurve,
    ValueNotInFp,
)
from .gf import FieldCtx, FieldElement, build_field, embed, linear_solve, rank_mod, span, to_subfield, trace


def _common(*xs: FieldElement) -> list[FieldElement]:
    """Embed all arguments into one field (the compositum of their fields)."""
    ctx = xs[0].ctx
    if all(x.ctx is ctx for x in xs):
        return list(xs)
    m = math.lcm(*(x.ctx.m for x in xs))
    big = build_field(ctx.p0, m, force=True)
    return [embed(x, big) for x in xs]


class Heisenberg:
    """Curve data for y^p - y = x R(x): E_R, f_R, V_R and the group law on H_R."""

    def __init__(self, R: AdditivePolynomial):
        self.R = R
        self.ctx = R.ctx  # F_q
        self.p0 = R.ctx.p0
        self.p = R.step
        self.k = _log(self.p0, self.p)
        self.e = R.e
        self.E = make_ER(R)
        self.fR: TwistedBiForm = make_fR(R)
        self.Fp = build_field(self.p0, self.k)

    # V_R ------------------------------------------------------------------------
    @functools.cached_property
    def vr_ctx(self) -> FieldCtx:
        return build_field(self.p0, self.ctx.m * splitting_degree(self.E, force=True), force=True)

    @functools.cached_property
    def vr_basis(self) -> list[FieldElement]:
        basis, full = kernel(self.E, self.vr_ctx)
        assert full
        return basis

    def vr_elements(self) -> list[FieldElement]:
        return span(self.vr_basis, self.vr_ctx)

    def in_VR(self, a: FieldElement) -> bool:
        return self.E(a).is_zero()

    def as_Fp(self, z: FieldElement) -> FieldElement:
        try:
            return to_subfield(z, self.Fp)
        except NotASubfield:
            raise ValueNotInFp(f"{z} is not in F_{self.p}") from None

    def fp_elements(self) -> list[FieldElement]:
        return [self.Fp.from_index(i) for i in range(self.Fp.order)]

    # group law -------------------------------------------------------------------
    def element(self, a: FieldElement, b: FieldElement, check: bool = True) -> HeisenbergElement:
        a, b = _common(a, b)
        h = HeisenbergElement(a, b)
        if check and not self.contains(h):
            raise NotInGroup(f"({a}, {b}) is not in H_R")
        return h

    def contains(self, h: HeisenbergElement) -> bool:
        a, b = _common(h.a, h.b)
        return self.E(a).is_zero() and b ** self.p - b == a * self.R(a)

    def multiply(self, h: HeisenbergElement, g: HeisenbergElement) -> HeisenbergElement:
        for x in (h, g):
            if not self.contains(x):
                raise NotInGroup(f"{x} is not in H_R")
        return self._mul(h, g)

    def _mul(self, h: HeisenbergElement, g: HeisenbergElement) -> HeisenbergElement:
        a, b, a2, b2 = _common(h.a, h.b, g.a, g.b)
        return HeisenbergElement(a + a2, b + b2 + self.fR(a, a2))

    def identity(self, ctx: FieldCtx | None = None) -> HeisenbergElement:
        ctx = ctx or self.ctx
        return HeisenbergElement(ctx.zero, ctx.zero)

    def power(self, h: HeisenbergElement, i: int) -> HeisenbergElement:
        """h^i = (i a, i b + C(i,2) f_R(a,a)) for i >= 0."""
        return HeisenbergElement(h.a * i, h.b * i + self.fR(h.a, h.a) * (i * (i - 1) // 2))

    def inverse(self, h: HeisenbergElement) -> HeisenbergElement:
        return HeisenbergElement(-h.a, -h.b + self.fR(h.a, h.a))

    def element_order(self, h: HeisenbergElement) -> int:
        if not self.contains(h):
            raise NotInGroup(f"{h} is not in H_R")
        i, cur = 1, h
        while not cur.is_identity():
            cur = self._mul(cur, h)
            i += 1
        return i

    def act(self, point: tuple[FieldElement, FieldElement], h: HeisenbergElement) -> tuple[FieldElement, FieldElement]:
        """(x, y) . (a, b) = (x + a, y + f_R(x, a) + b)."""
        x, y, a, b = _common(*point, h.a, h.b)
        if y ** self.p - y != x * self.R(x):
            raise PointNotOnCurve(f"({x}, {y}) is not on the curve")
        return x + a, y + self.fR(x, a) + b

    # pairing ---------------------------------------------------------------------
    def omega(self, a: FieldElement, a2: FieldElement) -> FieldElement:
        """f_R(a,a') - f_R(a',a) as an element of F_p."""
        a, a2 = _common(a, a2)
        for v in (a, a2):
            if not self.in_VR(v):
                raise NotInVR(f"{v} is not in V_R")
        return self.as_Fp(self.fR(a, a2) - self.fR(a2, a))

    def _omega_raw(self, a: FieldElement, a2: FieldElement) -> FieldElement:
        return self.fR(a, a2) - self.fR(a2, a)

    def gram_rank(self) -> int:
        """Rank over F_{p0} of Tr_{F_p/F_p0}(omega) on an F_{p0}-basis of V_R; 2ek when nondegenerate."""
        F1 = build_field(self.p0, 1)
        B = self.vr_basis
        rows = [[trace(self.as_Fp(self._omega_raw(x, y)), F1).c[0] for y in B] for x in B]
        return rank_mod(rows, self.p0)

    def omega_radical_trivial(self) -> bool:
        """No nonzero a in V_R pairs trivially with all of V_R."""
        return self.gram_rank() == len(self.vr_basis)

    # enumeration of H_R (small cases only) ----------------------------------------
    @functools.cached_property
    def h_ctx(self) -> FieldCtx:
        m = math.lcm(self.vr_ctx.m, self.k) * self.p0
        return build_field(self.p0, m, force=True)

    def solve_b(self, a: FieldElement, ctx: FieldCtx) -> list[FieldElement]:
        """All b in ctx with b^p - b = a R(a), a embedded in ctx."""
        a = embed(a, ctx)
        rhs = a * self.R(a)
        L = ctx.matrix_of(lambda z: z ** self.p - z)
        sol = linear_solve(L, rhs)
        if sol is None:
            return []
        return sorted(sol.all(), key=lambda z: z.index)

    def enumerate_H(self) -> list[HeisenbergElement]:
        ctx = self.h_ctx
        out = []
        for a in self.vr_elements():
            a = embed(a, ctx)
            for b in self.solve_b(a, ctx):
                out.append(HeisenbergElement(a, b))
        return out

    def center_bruteforce(self, elements: list[HeisenbergElement] | None = None) -> list[HeisenbergElement]:
        H = elements if elements is not None else self.enumerate_H()
        center = []
        for h in H:
            if all(self._mul(h, g) == self._mul(g, h) for g in H):
                center.append(h)
        return center

    # rationality -----------------------------------------------------------------
    def lift(self, a: FieldElement) -> HeisenbergElement:
        """Lift a in A (inside F_q) to A_R with b in F_q."""
        if a.ctx is not self.ctx:
            a = to_subfield(a, self.ctx)
        if self.p0 != 2:
            return HeisenbergElement(a, self.fR(a, a) / 2)
        sols = self.solve_b(a, self.ctx)
        if not sols:
            raise NoRationalLift(f"no b in F_q with b^p - b = aR(a) for a = {a}")
        return HeisenbergElement(a, sols[0])

    def H_in_Fq2(self) -> bool:
        """Whether every element of H_R has both coordinates in F_q."""
        if self.vr_ctx.m != self.ctx.m:
            return False
        for a in self.vr_elements():
            if not self.solve_b(a, self.ctx):
                return False
        return True


@dataclass(frozen=True)
class HeisenbergElement:
    a: FieldElement
    b: FieldElement

    def is_identity(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def key(self) -> tuple[int, int]:
        return (self.a.index, self.b.index)

    def __repr__(self):
        return f"({self.a}, {self.b})"


# ---------------------------------------------------------------------------
# Isotropic subspaces
# ---------------------------------------------------------------------------

@dataclass
class IsotropicSubspace:
    basis: list  # F_p-basis, elements of F_q
    FR: AdditivePolynomial
    elements: list = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {"basis": [list(a.c) for a in self.basis], "FR": self.FR.to_json()}


def _fp_span(G: Heisenberg, basis: list[FieldElement]) -> list[FieldElement]:
    ctx = basis[0].ctx if basis else G.ctx
    scalars = [embed(lam, ctx) for lam in G.Fp.basis()]
    return span([s * v for v in basis for s in scalars], ctx)


def fp_basis(G: Heisenberg, elements: list[FieldElement]) -> list[FieldElement]:
    """Greedy F_p-basis of the F_p-span of ``elements`` (taken in the given order)."""
    basis: list = []
    seen = {G.ctx.zero} if not elements else {elements[0].ctx.zero}
    for v in elements:
        if v not in seen:
            basis.append(v)
            seen = set(_fp_span(G, basis))
    return basis


def subspace_from_basis(G: Heisenberg, basis: list[FieldElement]) -> IsotropicSubspace:
    ctx = G.ctx
    scalars = [embed(lam, ctx) for lam in G.Fp.basis()]
    FR = AdditivePolynomial.from_kernel_basis(ctx, [s * v for v in basis for s in scalars], G.p)
    elems = _fp_span(G, basis) if basis else [ctx.zero]
    assert FR.degree == len(elems)
    assert all(FR(a).is_zero() for a in elems)
    FR.step_coeffs()  # F_p-linear: a p-polynomial
    outer_divide(G.E, FR)  # F_R | E_R
    return IsotropicSubspace(list(basis), FR, elems)


def maximal_isotropic_rational(G: Heisenberg) -> IsotropicSubspace:
    """Greedy isotropic completion inside V_R cap F_q, in element-index order.

    Every maximal isotropic subspace of a (possibly degenerate) alternating
    space has the same dimension, so if greedy stalls below e none exists.
    """
    kb, _ = kernel(G.E, G.ctx)
    W = span(kb, G.ctx)
    basis: list = []
    current = {G.ctx.zero}
    for v in W:
        if len(basis) == G.e:
            break
        if v in current:
            continue
        if all(G._omega_raw(v, w).is_zero() for w in basis):
            basis.append(v)
            current = set(_fp_span(G, basis))
    if len(basis) < G.e:
        raise NoRationalMaximalIsotropic(
            f"V_R cap F_q holds an isotropic subspace of F_p-dimension {len(basis)} only (need {G.e})"
        )
    return subspace_from_basis(G, basis)


def isotropic_from_FR(G: Heisenberg, FR: AdditivePolynomial) -> IsotropicSubspace:
    """A user-supplied F_R: its kernel must be a rational maximal isotropic subspace."""
    lead = FR.coeffs[-1]
    FR = FR.scale(lead.inverse()).with_step(G.p)
    kb, full = kernel(FR, G.ctx)
    if not full:
        raise NoRationalMaximalIsotropic("F_R does not split over F_q")
    elems = span(kb, G.ctx)
    if not all(G.in_VR(a) for a in elems):
        raise NotInVR("roots of F_R are not in V_R")
    basis = fp_basis(G, elems)
    if len(basis) != G.e:
        raise NoRationalMaximalIsotropic(f"kernel of F_R has F_p-dimension {len(basis)}, need {G.e}")
    if any(not G._omega_raw(x, y).is_zero() for x in basis for y in basis):
        raise NoRationalMaximalIsotropic("kernel of F_R is not totally isotropic")
    sub = subspace_from_basis(G, basis)
    assert sub.FR == FR
    return sub


def all_maximal_isotropic_rational(G: Heisenberg, limit: int = 64):
    """Maximal isotropic subspaces of V_R cap F_q in search order (p0 = 2 fallback)."""
    kb, _ = kernel(G.E, G.ctx)
    W = span(kb, G.ctx)
    seen: set = set()
    found = 0

    def rec(basis, current):
        nonlocal found
        if found >= limit:
            return
        if len(basis) == G.e:
            key = frozenset(current)
            if key not in seen:
                seen.add(key)
                found += 1
                yield basis
            return
        start = W.index(basis[-1]) + 1 if basis else 0
        for v in W[start:]:
            if v in current or not all(G._omega_raw(v, w).is_zero() for w in basis):
                continue
            yield from rec(basis + [v], set(_fp_span(G, basis + [v])))

    for basis in rec([], {G.ctx.zero}):
        yield subspace_from_basis(G, basis)


# ---------------------------------------------------------------------------
# A_R and its characters
# ---------------------------------------------------------------------------

def char_order(p0: int) -> int:
    """Order n of the roots of unity carrying character values: p0 (odd) or 4."""
    return 4 if p0 == 2 else p0


@dataclass
class AbelianGroup:
    G: Heisenberg
    elements: list  # HeisenbergElements, sorted by key
    generators: list
    orders: list
    normal_form: dict  # key -> exponent tuple

    def exponents(self, h: HeisenbergElement) -> tuple:
        try:
            return self.normal_form[h.key()]
        except KeyError:
            raise NotInGroup(f"{h} is not in A_R") from None

    def to_json(self) -> dict:
        return {
            "generators": [[list(g.a.c), list(g.b.c)] for g in self.generators],
            "orders": list(self.orders),
        }


def build_AR(G: Heisenberg, A: IsotropicSubspace) -> AbelianGroup:
    ctx = G.ctx
    elems = []
    for a in A.elements:
        base = G.lift(a)
        for z in G.fp_elements():
            elems.append(HeisenbergElement(a, base.b + embed(z, ctx)))
    elems.sort(key=lambda h: h.key())
    assert len(elems) == G.p ** (G.e + 1)
    return group_structure(G, elems)


def _cyclic(G: Heisenberg, g: HeisenbergElement) -> list:
    out = [G.identity(g.a.ctx)]
    cur = g
    while not cur.is_identity():
        out.append(cur)
        cur = G._mul(cur, g)
    return out


def group_structure(G: Heisenberg, elems: list) -> AbelianGroup:
    """Greedy decomposition: repeatedly take a maximal-order element whose cyclic
    group meets the current subgroup trivially; checked against |A_R| at the end."""
    orders = {h.key(): len(_cyclic(G, h)) for h in elems}
    ctx = elems[0].a.ctx
    sub = {G.identity(ctx).key(): ()}
    gens: list = []
    gen_orders: list = []
    by_order = sorted(elems, key=lambda h: (-orders[h.key()], h.key()))
    while len(sub) < len(elems):
        for g in by_order:
            cyc = _cyclic(G, g)
            if all(c.key() not in sub or c.is_identity() for c in cyc):
                break
        else:
            raise AssertionError("no complement found in A_R decomposition")
        new = {}
        for hk, ex in sub.items():
            h = HeisenbergElement(*_from_key(ctx, hk))
            for i, c in enumerate(cyc):
                new[G._mul(h, c).key()] = ex + (i,)
        sub = new
        gens.append(g)
        gen_orders.append(len(cyc))
    assert math.prod(gen_orders) == len(elems)
    return AbelianGroup(G, elems, gens, gen_orders, sub)


def _from_key(ctx: FieldCtx, key: tuple[int, int]) -> tuple[FieldElement, FieldElement]:
    return ctx.from_index(key[0]), ctx.from_index(key[1])


@dataclass(frozen=True)
class CharacterOfA:
    """Values xi(g_i) = zeta_n^k_i on the generators of A_R."""

    n: int
    values: tuple

    def __call__(self, group: AbelianGroup, h: HeisenbergElement) -> int:
        ex = group.exponents(h)
        return sum(k * i for k, i in zip(self.values, ex)) % self.n


def psi_exponent(G: Heisenberg, c: FieldElement, z: FieldElement) -> int:
    """psi_c(z) = zeta_n^((n/p0) Tr_{F_p/F_p0}(c z)), exponent returned mod n."""
    n = char_order(G.p0)
    F1 = build_field(G.p0, 1)
    c, z = embed(c, G.Fp), embed(z, G.Fp)
    t = trace(c * z, F1).c[0]
    return (n // G.p0) * t % n


def central_characters(G: Heisenberg) -> list[FieldElement]:
    """Nontrivial characters of F_p, indexed by c in F_p^x in index order."""
    return [G.Fp.from_index(i) for i in range(1, G.Fp.order)]


def characters_extending(group: AbelianGroup, c: FieldElement) -> list[CharacterOfA]:
    G = group.G
    if c.is_zero():
        raise CentralCharacterTrivial("psi must be nontrivial")
    n = char_order(G.p0)
    ctx = group.elements[0].a.ctx
    centre = [(HeisenbergElement(ctx.zero, embed(z, ctx)), psi_exponent(G, c, z)) for z in G.fp_elements()]
    choices = [range(0, n, n // o) if n % o == 0 else None for o in group.orders]
    assert all(ch is not None for ch in choices), "generator order does not divide n"
    out = []
    for vals in itertools.product(*choices):
        xi = CharacterOfA(n, tuple(vals))
        if all(xi(group, h) == target for h, target in centre):
            out.append(xi)
    assert len(out) == G.p**G.e
    return out


def check_character(group: AbelianGroup, xi: CharacterOfA) -> bool:
    """xi(gh) = xi(g) xi(h) for all g, h in A_R."""
    G = group.G
    for g in group.elements:
        for h in group.elements:
            if xi(group, G._mul(g, h)) != (xi(group, g) + xi(group, h)) % xi.n:
                return False
    return True


# ---------------------------------------------------------------------------
# Standing assumptions
# ---------------------------------------------------------------------------

def validate_assumptions(G: Heisenberg, A: IsotropicSubspace | None = None) -> dict:
    report: dict = {"p0_e_ok": not (G.p0 == 2 and G.e == 0)}
    if not report["p0_e_ok"]:
        return report
    try:
        A = A or maximal_isotropic_rational(G)
        report["rational_A"] = True
    except NoRationalMaximalIsotropic as exc:
        report["rational_A"] = False
        report["reason"] = str(exc)
        return report
    if G.p0 != 2:
        report["lifts_rational"] = True  # canonical lift (a, f_R(a,a)/2) lies in F_q
    else:
        report["lifts_rational"] = all(G.solve_b(a, G.ctx) for a in A.elements)
    report["H_in_Fq2"] = G.H_in_Fq2()
    return report


def require_odd(G: Heisenberg, what: str) -> None:
    if G.p0 == 2:
        raise EvenCharacteristic(f"{what} needs odd characteristic")
