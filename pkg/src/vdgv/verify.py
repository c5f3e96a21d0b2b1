"""Self-verification suites run by ``vdgv verify``.

Each suite returns a status ("pass", "fail" or "skipped") and a small payload:
a counterexample on failure, the reason when skipped.  A suite that raises is
reported as a failure carrying the exception text.
"""

from __future__ import annotations

import random

from .addpoly import inner_divide, kernel, outer_divide, verify_identity_a
from .cyclo import is_q_times_root_of_unity
from .errors import VdgvError
from .gf import build_field, embed, frobenius, linear_solve, trace
from .heis import Heisenberg, HeisenbergElement, _fp_span, char_order, check_character
from .lfunc import check_functional_equation, counts_from_L
from .pipeline import Analysis
from .quotient import check_cd, check_x1, check_x1_translation, descend_element, point_map

BRUTE_CENTER = 250  # |H_R| up to which the center is found by brute force
BRUTE_ORDERS = 5000  # |H_R| up to which every element order is checked
POINTS = 100

PASS, FAIL, SKIP = "pass", "fail", "skipped"


def _ok(flag: bool, payload=None):
    return (PASS, None) if flag else (FAIL, payload)


def _odd(an: Analysis):
    return an.spec.p0 != 2


def _rng(an: Analysis) -> random.Random:
    return random.Random(f"{an.spec.p0}-{an.spec.f}-{an.spec.p}-{an.spec.to_json()['R']}")


def _h_order(an: Analysis) -> int:
    return an.spec.p ** (2 * an.spec.e + 1)


# --- fields and additive polynomials -------------------------------------------------

def suite_field(an: Analysis):
    ctx = an.spec.ctx
    rng = _rng(an)
    big = build_field(ctx.p0, ctx.m * 2)
    for _ in range(50):
        x, y, z = (ctx.from_index(rng.randrange(ctx.order)) for _ in range(3))
        if (x + y) * z != x * z + y * z or (x * y) * z != x * (y * z):
            return FAIL, {"x": list(x.c), "y": list(y.c), "z": list(z.c)}
        if frobenius(x + y, 1) != frobenius(x, 1) + frobenius(y, 1) or frobenius(x * y, 1) != frobenius(x, 1) * frobenius(y, 1):
            return FAIL, {"frobenius": [list(x.c), list(y.c)]}
        if embed(frobenius(x, 1), big) != frobenius(embed(x, big), 1):
            return FAIL, {"embed_frobenius": list(x.c)}
        w = big.from_index(rng.randrange(big.order))
        F1 = build_field(ctx.p0, 1)
        if trace(w, F1) != trace(trace(w, ctx), F1):
            return FAIL, {"trace_transitivity": list(w.c)}
    return PASS, None


def suite_identity_a(an: Analysis):
    return _ok(verify_identity_a(an.spec.R))


def suite_division(an: Analysis):
    G, A = an.G, an.A
    E, F = G.E, A.FR.with_step(G.p)
    outer = outer_divide(E, F)
    inner = inner_divide(E, F)
    ok = outer.compose(F) == E and F.compose(inner) == E
    return _ok(ok, {"E_R": E.to_json(), "F_R": F.to_json()})


def suite_kernel(an: Analysis):
    G = an.G
    basis, full = kernel(G.E, G.vr_ctx)
    ok = full and len(basis) == 2 * G.e * G.k and all(G.E(v).is_zero() for v in basis)
    return _ok(ok, {"dimension": len(basis), "expected": 2 * G.e * G.k})


# --- Heisenberg group -----------------------------------------------------------------

def suite_center(an: Analysis):
    G = an.G
    if _h_order(an) > BRUTE_CENTER:
        # commutator pairing nondegenerate <=> Z(H_R) = {0} x F_p
        return _ok(G.omega_radical_trivial(), {"gram_rank": G.gram_rank()})
    H = G.enumerate_H()
    centre = G.center_bruteforce(H)
    ok = len(centre) == G.p and all(h.a.is_zero() for h in centre)
    return _ok(ok, {"center": [[list(h.a.c), list(h.b.c)] for h in centre]})


def suite_quotient_bijection(an: Analysis):
    G = an.G
    if _h_order(an) > BRUTE_ORDERS:
        return SKIP, {"reason": f"|H_R| = {_h_order(an)} is above the enumeration limit"}
    H = G.enumerate_H()
    fibres: dict = {}
    for h in H:
        fibres.setdefault(h.a, []).append(h)
    ok = len(H) == _h_order(an) and len(fibres) == G.p ** (2 * G.e) and all(len(v) == G.p for v in fibres.values())
    return _ok(ok, {"size": len(H), "fibres": len(fibres)})


def suite_omega(an: Analysis):
    G = an.G
    V = G.vr_elements()
    rng = _rng(an)
    sample = V if len(V) <= 81 else rng.sample(V, 81)
    Fp = list(G.fp_elements())
    for a in sample:
        if not G.omega(a, a).is_zero():
            return FAIL, {"not_alternating": list(a.c)}
    for _ in range(50):
        a, b, c = (rng.choice(V) for _ in range(3))
        lam = rng.choice(Fp)
        lam_v = embed(lam, a.ctx)
        if G.omega(a + b, c) != G.omega(a, c) + G.omega(b, c) or G.omega(a * lam_v, c) != G.omega(a, c) * lam:
            return FAIL, {"not_bilinear": [list(a.c), list(b.c), list(c.c)]}
    rank = G.gram_rank()
    return _ok(rank == 2 * G.e * G.k, {"gram_rank": rank, "expected": 2 * G.e * G.k})


def suite_element_orders(an: Analysis):
    G = an.G
    n = char_order(G.p0)
    elems = G.enumerate_H() if _h_order(an) <= BRUTE_ORDERS else an.AR.elements
    for h in elems:
        o = G.element_order(h)
        if n % o:
            return FAIL, {"element": [list(h.a.c), list(h.b.c)], "order": o}
    return PASS, {"checked": len(elems)}


def suite_isotropic(an: Analysis):
    G, A = an.G, an.A
    for x in A.elements:
        for y in A.elements:
            if not G._omega_raw(x, y).is_zero():
                return FAIL, {"pair": [list(x.c), list(y.c)]}
    ok = A.dim == G.e and len(A.elements) == G.p**G.e and all(A.FR(a).is_zero() for a in A.elements)
    return _ok(ok, {"dim": A.dim})


def suite_characters(an: Analysis):
    for ci, (c, chars) in sorted(an.characters.items()):
        for xi in chars:
            if not check_character(an.AR, xi):
                return FAIL, {"psi": list(c.c), "xi": list(xi.values)}
    return PASS, None


def _curve_points(an: Analysis, ctx, count: int):
    """Up to `count` random affine points of the curve with coordinates in ctx."""
    G, rng = an.G, _rng(an)
    L = ctx.matrix_of(lambda z: z**G.p - z)
    pts = []
    for _ in range(count * 8):
        x = ctx.from_index(rng.randrange(ctx.order))
        sol = linear_solve(L, x * G.R(x))
        if sol is not None:
            pts.append((x, sol.particular))
            if len(pts) == count:
                break
    return pts


def suite_action(an: Analysis):
    G = an.G
    ctx = G.h_ctx
    if ctx.m > 48:
        return SKIP, {"reason": f"H_R lives in a field of degree {ctx.m}"}
    rng = _rng(an)
    V = G.vr_elements()
    hs = []
    for _ in range(6):
        a = embed(rng.choice(V), ctx)
        bs = G.solve_b(a, ctx)
        hs.append(HeisenbergElement(a, rng.choice(bs)))
    for P in _curve_points(an, ctx, 20):
        for h in hs:
            for g in hs:
                Q = G.act(G.act(P, h), g)
                if Q != G.act(P, G._mul(h, g)):
                    return FAIL, {"point": [list(P[0].c), list(P[1].c)]}
    return PASS, None


# --- quotient chain (odd p0) -----------------------------------------------------------------

def _needs_chain(fn=None, *, empty_ok=False):
    def wrap(fn):
        def run(an: Analysis):
            if not _odd(an):
                return SKIP, {"reason": "the quotient chain needs odd p0"}
            if an.spec.e == 0 and not empty_ok:
                return SKIP, {"reason": "e = 0: the chain is empty"}
            return fn(an)

        run.__name__ = fn.__name__
        return run

    return wrap(fn) if fn is not None else wrap


@_needs_chain
def suite_cd(an: Analysis):
    bad = [i for i, s in enumerate(an.chain.steps) if not check_cd(s)]
    return _ok(not bad, {"steps": bad})


@_needs_chain
def suite_cd2(an: Analysis):
    G = an.G
    for i, step in enumerate(an.chain.steps):
        for a2 in _fp_span(G, an.chain.bases[i]):
            _, ok = descend_element(G, G.lift(a2), step)
            if not ok:
                return FAIL, {"step": i, "a": list(a2.c)}
        G = Heisenberg(step.R1)
    return PASS, None


@_needs_chain
def suite_degree_halving(an: Analysis):
    degs = [s.R.degree for s in an.chain.steps] + [an.chain.steps[-1].R1.degree]
    ok = all(degs[i + 1] * an.spec.p == degs[i] for i in range(len(degs) - 1))
    dims = [len(b) for b in an.chain.bases]
    ok = ok and dims == list(range(an.spec.e, -1, -1))
    return _ok(ok, {"degrees": degs, "dims": dims})


@_needs_chain(empty_ok=True)
def suite_x1(an: Analysis):
    G = an.G
    return _ok(check_x1(G, an.chain) and check_x1_translation(G, an.A, an.chain))


@_needs_chain
def suite_point_map(an: Analysis):
    G = an.G
    big = build_field(G.p0, G.ctx.m * G.p0)
    pts = _curve_points(an, big, POINTS)
    if not pts:
        return SKIP, {"reason": "no points found"}
    for i, step in enumerate(an.chain.steps):
        G1 = Heisenberg(step.R1)
        nxt = []
        for x, y in pts:
            u, v = point_map(step, x, y)
            if v**G.p - v != u * G1.R(u):
                return FAIL, {"step": i, "point": [list(x.c), list(y.c)]}
            nxt.append((u, v))
        pts = nxt
    return PASS, {"points": len(pts)}


@_needs_chain(empty_ok=True)
def suite_c_A(an: Analysis):
    cf = an.closed_forms
    info = {k: cf[k] for k in ("constructive", "lemma", "display", "sign_free", "lemma_agrees", "display_agrees")}
    # the closed forms are recorded whatever the outcome
    return (PASS if cf["sign_free_agrees"] and check_x1(an.G, an.chain) else FAIL), info


# --- Gauss sums ------------------------------------------------------------------------------

def _needs_tau(fn):
    def run(an: Analysis):
        if an.tau_table is None:
            return SKIP, {"reason": "no per-character route (p0 = 2 and H_R not inside F_q^2)"}
        return fn(an)

    run.__name__ = fn.__name__
    return run


@_needs_tau
def suite_tau_routes(an: Analysis):
    bad = [r["xi"].values for r in an.tau_table if not r["routes_agree"]]
    return _ok(not bad, {"xi": bad})


@_needs_tau
def suite_tau_norm(an: Analysis):
    q = an.spec.q
    bad = [r["tau"].to_json() for r in an.tau_table if r["tau"] * r["tau"].conj() != q]
    return _ok(not bad, {"tau": bad})


@_needs_tau
def suite_corollary_2c(an: Analysis):
    bad = [r["tau"].to_json() for r in an.tau_table if not all(r["corollary_2c"].values())]
    return _ok(not bad, {"tau": bad})


@_needs_tau
def suite_sum_rule(an: Analysis):
    bad = [ci for ci, ok in an.sum_rule.items() if not ok]
    return _ok(not bad, {"psi_index": bad})


def suite_prop_47(an: Analysis):
    if not _odd(an):
        return SKIP, {"reason": "needs odd p0"}
    return _ok(an.prop_47)


def suite_root_independence(an: Analysis):
    if not _odd(an):
        return SKIP, {"reason": "needs odd p0"}
    if an.spec.e == 0:
        return SKIP, {"reason": "ker F_R = 0"}
    return _ok(an.descent.root_independent)


# --- L-polynomials -----------------------------------------------------------------------------

def suite_routes_agree(an: Analysis):
    routes = {k: v for k, v in an.L_routes.items() if v is not None}
    if len(routes) < 2:
        return SKIP, {"reason": f"only {sorted(routes)} fits the budget"}
    first = next(iter(routes.values()))
    return _ok(all(v == first for v in routes.values()), {k: v.as_list() for k, v in routes.items()})


def suite_functional_equation(an: Analysis):
    L, g = an.L, an.spec.genus
    ok = check_functional_equation(L, an.spec.q, g) and L.degree == 2 * g and L.coeffs[0] == 1
    return _ok(ok, {"L": L.as_list(), "genus": g})


def suite_psi_product(an: Analysis):
    if an.psi_parts is None:
        return SKIP, {"reason": "twisted sums over F_{q^(p^e)} exceed the budget"}
    ok = an.L_psi == an.L
    # L for conj(psi) is the conjugate of L_psi: psi_{-c} = conj(psi_c)
    for ci, (c, _) in an.characters.items():
        conj_idx = (-c).index
        P, Q = an.psi_parts[ci], an.psi_parts[conj_idx]
        if P.conj() != Q:
            return FAIL, {"psi": list(c.c)}
    return _ok(ok, {"product": an.L_psi.as_list(), "L": an.L.as_list()})


@_needs_tau
def suite_psi_factors(an: Analysis):
    if an.psi_factor_agreement is None:
        return SKIP, {"reason": "twisted sums over F_{q^(p^e)} exceed the budget"}
    bad = [ci for ci, ok in an.psi_factor_agreement.items() if not ok]
    return _ok(not bad, {"psi_index": bad})


def suite_counts(an: Analysis):
    spec = an.spec
    max_n = 4 * spec.p0
    N = counts_from_L(an.L, spec.q, max_n)
    g = spec.genus
    for n in range(1, max_n + 1):
        S = spec.q**n + 1 - N[n]
        if N[n] < 1 or N[n] % spec.p != 1 % spec.p or S * S > 4 * g * g * spec.q**n:
            return FAIL, {"n": n, "N": N[n]}
    an.counts(max_n)  # raises OracleMismatch if an enumerated count disagrees
    return PASS, None


def suite_supersingular(an: Analysis):
    spec = an.spec
    n = 4 * spec.p0
    N = counts_from_L(an.L, spec.q, n)[n]
    by_count = N == spec.q**n + 1 - 2 * spec.genus * spec.q ** (n // 2)
    out = {"by_count": by_count}
    if an.tau_table is not None:
        out["by_tau"] = all(is_q_times_root_of_unity(r["tau"], spec.q, n) for r in an.tau_table)
    verdict = an.verdicts(n).supersingular
    return _ok(verdict and all(out.values()), out)


def suite_delta(an: Analysis):
    if an.spec.delta is None:
        return SKIP, {"reason": "no delta given"}
    d = an.delta_result
    return _ok(d["L"] == d["oracle"], {"L": d["L"].as_list(), "oracle": d["oracle"].as_list()})


SUITES = [
    ("field", suite_field),
    ("identity_a", suite_identity_a),
    ("composition_division", suite_division),
    ("kernel", suite_kernel),
    ("center", suite_center),
    ("quotient_by_center", suite_quotient_bijection),
    ("omega_symplectic", suite_omega),
    ("element_orders", suite_element_orders),
    ("isotropic", suite_isotropic),
    ("characters", suite_characters),
    ("action", suite_action),
    ("cd", suite_cd),
    ("cd2", suite_cd2),
    ("degree_halving", suite_degree_halving),
    ("x1", suite_x1),
    ("point_map", suite_point_map),
    ("c_A", suite_c_A),
    ("tau_routes", suite_tau_routes),
    ("tau_norm", suite_tau_norm),
    ("corollary_2c", suite_corollary_2c),
    ("sum_rule", suite_sum_rule),
    ("proposition_47", suite_prop_47),
    ("root_independence", suite_root_independence),
    ("L_routes", suite_routes_agree),
    ("functional_equation", suite_functional_equation),
    ("psi_product", suite_psi_product),
    ("psi_factors", suite_psi_factors),
    ("counts", suite_counts),
    ("supersingular", suite_supersingular),
    ("delta", suite_delta),
]


def run_suites(an: Analysis, only: list[str] | None = None) -> dict:
    out = {}
    for name, fn in SUITES:
        if only and name not in only:
            continue
        try:
            status, payload = fn(an)
        except (VdgvError, AssertionError, ValueError) as exc:
            status, payload = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
        rec = {"status": status}
        if payload is not None:
            rec["detail"] = payload
        out[name] = rec
    return out


def all_passed(results: dict) -> bool:
    return all(r["status"] != FAIL for r in results.values())

