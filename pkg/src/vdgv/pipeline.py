"""The analysis pipeline and the JSON report.

``Analysis`` computes each artifact lazily (Heisenberg data, A, A_R, quotient
chain, descent, tau table, L by every affordable route) so the CLI subcommands
and the verification suite can share work.
"""

from __future__ import annotations

import functools
import time
from contextlib import contextmanager

from . import gauss
from .cyclo import IntPolynomial, linear_factor_product
from .errors import ConsistencyError, NoRationalLift, OracleMismatch, SizeGuardExceeded
from .heis import (
    Heisenberg,
    all_maximal_isotropic_rational,
    build_AR,
    characters_extending,
    isotropic_from_FR,
    maximal_isotropic_rational,
)
from .lfunc import (
    DEFAULT_BUDGET,
    Counter,
    CurveSpec,
    check_functional_equation,
    classify,
    counts_from_L,
    delta_curve_lpoly,
    lpoly_oracle,
    lpoly_product,
    product_of,
    psi_characters,
    psi_part_lpoly,
)
from .quotient import closed_form_cA, iterate_to_cA

SCHEMA = "vdgv-report/1"


def coords(x) -> list:
    return list(x.c)


def poly_json(P: IntPolynomial) -> list:
    return [c.to_json() if hasattr(c, "to_json") else c for c in P.coeffs]


class Analysis:
    def __init__(self, spec: CurveSpec, *, budget: int = DEFAULT_BUDGET, force: bool = False, jobs: int = 1):
        self.spec = spec
        self.budget = budget
        self.force = force
        self.counter = Counter(spec, jobs)
        self.timings: dict = {}

    @contextmanager
    def timed(self, name: str):
        t = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - t

    def affordable(self, n: int) -> bool:
        return self.spec.q**n <= self.budget

    # group-theoretic data -----------------------------------------------------------
    @functools.cached_property
    def G(self) -> Heisenberg:
        return Heisenberg(self.spec.R)

    @functools.cached_property
    def A(self):
        G = self.G
        if self.spec.FR is not None:
            A = isotropic_from_FR(G, self.spec.FR)
            self.A_source = "user"
        else:
            A = maximal_isotropic_rational(G)
            self.A_source = "greedy"
        if G.p0 == 2 and not all(G.solve_b(a, G.ctx) for a in A.elements):
            if self.spec.FR is not None:
                raise NoRationalLift("A_R is not contained in F_q^2 for the given F_R")
            for cand in all_maximal_isotropic_rational(G):
                if all(G.solve_b(a, G.ctx) for a in cand.elements):
                    self.A_source = "search"
                    return cand
            raise NoRationalLift("no maximal isotropic A in F_q has A_R inside F_q^2")
        return A

    @functools.cached_property
    def AR(self):
        return build_AR(self.G, self.A)

    @functools.cached_property
    def H_in_Fq2(self) -> bool:
        return self.G.H_in_Fq2()

    @functools.cached_property
    def characters(self) -> dict:
        return {c.index: (c, characters_extending(self.AR, c)) for c in psi_characters(self.spec)}

    # quotient and descent (odd p0) ------------------------------------------------------
    @functools.cached_property
    def chain(self):
        if self.G.p0 == 2:
            return None
        with self.timed("quotient"):
            return iterate_to_cA(self.G, self.A)

    @functools.cached_property
    def c_A(self):
        if self.chain is None:
            return None
        return self.chain.c_A

    @functools.cached_property
    def closed_forms(self) -> dict | None:
        if self.chain is None:
            return None
        return closed_form_cA(self.G, self.A, self.chain)

    @functools.cached_property
    def descent(self):
        if self.G.p0 == 2:
            return None
        with self.timed("descent"):
            return gauss.build_descent(self.G, self.A)

    # tau table ---------------------------------------------------------------------------
    @functools.cached_property
    def tau_table(self) -> list | None:
        """One record per (psi, xi); None when no per-xi route applies (p0 = 2 without H_R in F_q^2)."""
        G, spec = self.G, self.spec
        records = []
        with self.timed("tau"):
            if G.p0 != 2:
                for ci, (c, chars) in sorted(self.characters.items()):
                    for xi in chars:
                        t_sum = gauss.tau_via_sum(xi, self.AR, self.descent)
                        eta = gauss.eta_of_xi(xi, self.AR, self.descent, c)
                        t_cf = gauss.tau_closed_form(G, c, eta, self.c_A)
                        records.append(
                            {
                                "psi": c,
                                "xi": xi,
                                "tau": t_sum,
                                "eta": eta,
                                "routes": {"sum": t_sum, "closed_form": t_cf},
                                "routes_agree": t_sum == t_cf,
                            }
                        )
            elif self.H_in_Fq2:
                for ci, (c, chars) in sorted(self.characters.items()):
                    t = gauss.tau_via_schur(G, c)
                    for xi in chars:
                        records.append({"psi": c, "xi": xi, "tau": t, "eta": None, "routes": {"schur": t}, "routes_agree": True})
            else:
                return None
        for r in records:
            r["norm_ok"] = r["tau"] * r["tau"].conj() == spec.q
            r["corollary_2c"] = gauss.check_corollary_2c(r["tau"], spec.q, spec.p0, spec.f)
        bad = [r for r in records if not r["routes_agree"]]
        if bad:
            raise ConsistencyError(f"tau routes disagree for {len(bad)} characters")
        return records

    @functools.cached_property
    def sum_rule(self) -> dict | None:
        if self.tau_table is None:
            return None
        out = {}
        for ci, (c, _) in sorted(self.characters.items()):
            taus = [r["tau"] for r in self.tau_table if r["psi"] == c]
            total = taus[0] * 0
            for t in taus:
                total = total + t
            out[ci] = total == gauss.twisted_sum_Fq(self.G, c)
        return out

    @functools.cached_property
    def prop_47(self) -> bool | None:
        if self.descent is None:
            return None
        return gauss.proposition_47(self.G, self.descent, self.c_A)

    # L-polynomial routes -------------------------------------------------------------------
    @functools.cached_property
    def L_product(self) -> IntPolynomial | None:
        if self.tau_table is None:
            return None
        return lpoly_product([r["tau"] for r in self.tau_table])

    @functools.cached_property
    def psi_parts(self) -> dict | None:
        d = self.spec.p**self.spec.e
        if not self.affordable(d):
            return None
        with self.timed("psi_parts"):
            return {c.index: psi_part_lpoly(self.spec, self.counter, c, self.force) for c in psi_characters(self.spec)}

    @functools.cached_property
    def L_psi(self) -> IntPolynomial | None:
        if self.psi_parts is None:
            return None
        return product_of(list(self.psi_parts.values())).to_integers()

    @functools.cached_property
    def L_oracle(self) -> IntPolynomial | None:
        if not self.affordable(2 * self.spec.genus):
            return None
        with self.timed("oracle"):
            return lpoly_oracle(self.spec, self.counter, self.force)

    @functools.cached_property
    def L(self) -> IntPolynomial:
        routes = {k: v for k, v in self.L_routes.items() if v is not None}
        if not routes:
            raise SizeGuardExceeded("no route to L fits the enumeration budget; raise --budget")
        vals = list(routes.values())
        for name, P in routes.items():
            if P != vals[0]:
                raise OracleMismatch(f"L from {name} differs: {routes}")
        return vals[0]

    @functools.cached_property
    def L_routes(self) -> dict:
        return {"product": self.L_product, "psi_parts": self.L_psi, "oracle": self.L_oracle}

    @functools.cached_property
    def psi_factor_agreement(self) -> dict | None:
        """Per psi: the tau sub-product equals the twisted-sum factor."""
        if self.tau_table is None or self.psi_parts is None:
            return None
        out = {}
        for ci, (c, _) in sorted(self.characters.items()):
            taus = [r["tau"] for r in self.tau_table if r["psi"] == c]
            out[ci] = linear_factor_product(taus) == self.psi_parts[ci]
        return out

    # counts and verdicts ----------------------------------------------------------------------
    def counts(self, max_n: int) -> list:
        derived = counts_from_L(self.L, self.spec.q, max_n)
        rows = []
        for n in range(1, max_n + 1):
            row = {"n": n, "N": derived[n], "source": "derived"}
            if self.affordable(n):
                with self.timed("counts"):
                    direct = self.counter.count(n, self.force)
                if direct != derived[n]:
                    raise OracleMismatch(f"N_{n}: enumeration gives {direct}, L gives {derived[n]}")
                row["source"] = "both"
            rows.append(row)
        return rows

    def verdicts(self, max_n: int):
        v = classify(self.spec, self.L, max_n, self.H_in_Fq2 if self.spec.p0 == 2 else None)
        if self.tau_table is not None:
            v.theorem_checks["supersingular_by_tau"] = all(r["corollary_2c"]["power_4p0"] for r in self.tau_table)
        return v

    @functools.cached_property
    def delta_result(self) -> dict | None:
        if self.spec.delta is None:
            return None
        with self.timed("delta"):
            return delta_curve_lpoly(self.spec, self.counter, self.psi_parts, self.force)


# ---------------------------------------------------------------------------
# Report assembly
# ---------------------------------------------------------------------------

def tau_records_json(records: list) -> list:
    out = []
    for r in records:
        rec = {
            "psi": coords(r["psi"]),
            "xi": list(r["xi"].values),
            "tau": r["tau"].to_json(),
            "routes": {k: v.to_json() for k, v in sorted(r["routes"].items())},
            "routes_agree": r["routes_agree"],
            "norm_is_q": r["norm_ok"],
            "corollary_2c": r["corollary_2c"],
        }
        if r["eta"] is not None:
            rec["eta"] = coords(r["eta"])
            rec["eta_zero"] = r["eta"].is_zero()
        out.append(rec)
    return out


def quotient_json(an: Analysis) -> dict | None:
    if an.chain is None:
        return None
    out = an.chain.to_json()
    out["basis_order"] = "reverse"
    out["closed_forms"] = an.closed_forms
    return out


def build_report(an: Analysis, max_n: int | None = None) -> dict:
    spec = an.spec
    max_n = max_n or 4 * spec.p0
    G = an.G
    A = an.A
    rep: dict = {"schema": SCHEMA, "curve": spec.to_json()}
    rep["assumptions"] = {
        "p0_e_ok": True,
        "rational_A": True,
        "lifts_rational": True,
        "H_in_Fq2": an.H_in_Fq2,
    }
    rep["isotropic"] = dict(A.to_json(), source=an.A_source)
    AR = an.AR
    rep["group"] = dict(AR.to_json(), lifts=[[coords(a), coords(G.lift(a).b)] for a in A.elements])
    rep["quotient"] = quotient_json(an)
    if an.descent is not None:
        rep["descent"] = an.descent.to_json()
    table = an.tau_table
    rep["tau"] = tau_records_json(table) if table is not None else None
    if table is None:
        rep["tau_note"] = "no per-character route: p0 = 2 and H_R is not inside F_q^2"
    L = an.L
    routes = an.L_routes
    rep["L"] = {
        "coeffs": L.as_list(),
        "degree": L.degree,
        "routes": {k: (v.as_list() if v is not None else "skipped") for k, v in sorted(routes.items())},
        "functional_equation": check_functional_equation(L, spec.q, spec.genus),
    }
    if table is not None:
        rep["L"]["factored"] = [r["tau"].to_json() for r in table]
    if an.psi_parts is not None:
        rep["psi_parts"] = [
            {"psi": coords(an.characters[ci][0]), "coeffs": poly_json(P)} for ci, P in sorted(an.psi_parts.items())
        ]
    rep["counts"] = an.counts(max_n)
    rep["verdicts"] = an.verdicts(max_n).to_json()
    rep["checks"] = {
        "sum_rule": all(an.sum_rule.values()) if an.sum_rule is not None else "skipped",
        "proposition_47": an.prop_47 if an.prop_47 is not None else "skipped",
        "psi_factors_match_tau": all(an.psi_factor_agreement.values()) if an.psi_factor_agreement is not None else "skipped",
    }
    if an.delta_result is not None:
        d = an.delta_result
        rep["delta"] = {
            "nu": [list(c.c) for c in d["nu"].coeffs],
            "characters": [coords(c) for c in d["characters"]],
            "L": d["L"].as_list(),
            "oracle": d["oracle"].as_list(),
            "agree": d["L"] == d["oracle"],
        }
    return rep


def tau_report(an: Analysis) -> dict:
    table = an.tau_table
    rep = {"schema": SCHEMA, "curve": an.spec.to_json()}
    rep["tau"] = tau_records_json(table) if table is not None else None
    if table is not None:
        rep["sum_rule"] = all(an.sum_rule.values())
    if an.chain is not None:
        rep["c_A"] = coords(an.c_A)
    return rep


def quotient_report(an: Analysis) -> dict:
    rep = {"schema": SCHEMA, "curve": an.spec.to_json(), "isotropic": an.A.to_json()}
    rep["quotient"] = quotient_json(an)
    if rep["quotient"] is None:
        rep["quotient_note"] = "the quotient chain is defined for odd p0 only"
    return rep


__all__ = ["Analysis", "build_report", "tau_report", "quotient_report", "SCHEMA"]
