"""Point counts, L-polynomials and maximality verdicts.

The counter enumerates F_{q^n} in numpy chunks: R, the multiplication by x and
the trace down to F_p are all F_{p0}-linear or bilinear maps on coordinate
vectors, so one pass yields the histogram of Tr(x R(x)) over F_p.  From that
histogram come both N_n and the psi-twisted sums.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .addpoly import AdditivePolynomial, kernel, validate_delta, _log
from .cyclo import CyclotomicInteger, IntPolynomial, linear_factor_product, newton_from_power_sums, power_sums
from .errors import AssumptionError, InputError, OracleMismatch
from .gf import FieldCtx, build_field, check_size, embed, is_prime, nullspace_mod, trace, trace_matrix, transpose
from .heis import char_order

CHUNK = 1 << 16
DEFAULT_BUDGET = 1 << 20  # elements enumerated by optional cross-checks


@dataclass
class CurveSpec:
    p0: int
    f: int
    p: int
    R: AdditivePolynomial
    FR: AdditivePolynomial | None = None
    delta: AdditivePolynomial | None = None

    @property
    def q(self) -> int:
        return self.p0**self.f

    @property
    def ctx(self) -> FieldCtx:
        return self.R.ctx

    @property
    def e(self) -> int:
        return self.R.e

    @property
    def genus(self) -> int:
        return self.p**self.e * (self.p - 1) // 2

    def to_json(self) -> dict:
        out = {
            "p0": self.p0,
            "f": self.f,
            "q": self.q,
            "p": self.p,
            "e": self.e,
            "genus": self.genus,
            "modulus": list(self.ctx.modulus),
            "R": self.R.to_json()["coeffs"],
        }
        if self.FR is not None:
            out["FR"] = self.FR.to_json()["coeffs"]
        if self.delta is not None:
            out["delta"] = [list(c.c) for c in self.delta.coeffs]
        return out


def make_spec(p0: int, f: int, p: int, R: list, FR: list | None = None, delta: list | None = None) -> CurveSpec:
    """Build and validate a curve spec from coordinate lists (one list per coefficient)."""
    if not is_prime(p0):
        raise InputError(f"p0 = {p0} is not prime")
    if f < 1:
        raise InputError("f must be positive")
    try:
        k = _log(p0, p)
    except ValueError:
        raise InputError(f"p = {p} is not a power of p0 = {p0}") from None
    if k < 1 or f % k:
        raise InputError(f"q = {p0}^{f} is not a power of p = {p}")
    ctx = build_field(p0, f)

    def elems(coeffs):
        try:
            return [ctx.element(c if isinstance(c, (list, tuple)) else [c]) for c in coeffs]
        except ValueError as exc:
            raise InputError(str(exc)) from None

    if not R:
        raise InputError("R needs at least one coefficient")
    Rp = AdditivePolynomial.from_step(ctx, elems(R), p)
    if Rp.is_zero():
        raise InputError("R must be nonzero")
    if Rp.top % k or Rp.step_coeffs()[-1].is_zero():
        raise InputError("leading coefficient a_e must be nonzero")
    if p0 == 2 and Rp.e == 0:
        raise AssumptionError("(p0, e) = (2, 0) is excluded: the genus would be zero")
    FRp = AdditivePolynomial.from_step(ctx, elems(FR), p) if FR else None
    dp = AdditivePolynomial(ctx, elems(delta)) if delta else None
    return CurveSpec(p0, f, p, Rp, FRp, dp)


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

class Counter:
    """Histograms of Tr_{F_{q^n}/F_p}(x R(x)) and image-membership counts."""

    def __init__(self, spec: CurveSpec, jobs: int = 1):
        self.spec = spec
        self.jobs = max(1, jobs)
        self.Fp = build_field(spec.p0, _log(spec.p0, spec.p))
        self._hist: dict = {}

    def _field(self, n: int, force: bool) -> FieldCtx:
        big = build_field(self.spec.p0, self.spec.f * n, force=True)
        check_size(big.order, force, f"enumeration of F_{{q^{n}}}")
        return big

    def _chunks(self, big: FieldCtx, fn):
        bounds = [(s, min(s + CHUNK, big.order)) for s in range(0, big.order, CHUNK)]
        if self.jobs > 1 and len(bounds) > 1:
            with ThreadPoolExecutor(self.jobs) as ex:
                return list(ex.map(lambda b: fn(*b), bounds))
        return [fn(*b) for b in bounds]

    def histogram(self, n: int, force: bool = False) -> np.ndarray:
        """counts[v] = #{x in F_{q^n} : Tr(x R(x)) = element of F_p with index v}."""
        if n in self._hist:
            return self._hist[n]
        big = self._field(n, force)
        p0 = big.p0
        MR = np.array(self.spec.R.matrix(big), dtype=np.int64).T
        T = np.array(trace_matrix(big, self.Fp), dtype=np.int64).T
        w = p0 ** np.arange(self.Fp.m, dtype=np.int64)
        size = self.Fp.order

        def work(lo, hi):
            X = big.coords_array(lo, hi)
            Y = big.mul_arrays(X, (X @ MR) % p0)
            idx = ((Y @ T) % p0) @ w
            return np.bincount(idx, minlength=size)

        hist = sum(self._chunks(big, work))
        self._hist[n] = hist
        return hist

    def count(self, n: int, force: bool = False) -> int:
        """N_n = 1 + p * #{x : Tr(x R(x)) = 0}."""
        return 1 + self.spec.p * int(self.histogram(n, force)[0])

    def twisted_sum(self, n: int, c, force: bool = False) -> CyclotomicInteger:
        """S_n^(psi_c) = -sum_x psi_c(Tr(x R(x)))."""
        hist = self.histogram(n, force)
        nn = char_order(self.spec.p0)
        F1 = build_field(self.spec.p0, 1)
        counts = [0] * nn
        for v, cnt in enumerate(hist):
            if cnt:
                z = self.Fp.from_index(v)
                t = trace(embed(c, self.Fp) * z, F1).c[0]
                counts[(nn // self.spec.p0) * t % nn] -= int(cnt)
        return CyclotomicInteger.from_poly(nn, counts)

    def count_delta(self, delta: AdditivePolynomial, n: int, force: bool = False) -> int:
        """Points of the delta-curve over F_{q^n}: deg(delta) fibres over x with x R(x) in Im(delta)."""
        big = self._field(n, force)
        p0 = big.p0
        MR = np.array(self.spec.R.matrix(big), dtype=np.int64).T
        D = delta.matrix(big)
        Wt = np.array(nullspace_mod(transpose(D), p0, big.m), dtype=np.int64).reshape(-1, big.m).T

        def work(lo, hi):
            X = big.coords_array(lo, hi)
            Y = big.mul_arrays(X, (X @ MR) % p0)
            if Wt.shape[1] == 0:
                return hi - lo
            return int(np.count_nonzero(~((Y @ Wt) % p0).any(axis=1)))

        hits = sum(self._chunks(big, work))
        return 1 + delta.degree * int(hits)


# ---------------------------------------------------------------------------
# L-polynomials
# ---------------------------------------------------------------------------

def check_functional_equation(L: IntPolynomial, q: int, g: int) -> bool:
    c = list(L.coeffs) + [0] * (2 * g + 1 - len(L.coeffs))
    if len(c) != 2 * g + 1:
        return False
    return all(c[2 * g - i] == q ** (g - i) * c[i] for i in range(g + 1))


def lpoly_oracle(spec: CurveSpec, counter: Counter, force: bool = False) -> IntPolynomial:
    """L from N_1..N_2g via Newton; the functional equation is checked afterwards, not assumed."""
    g = spec.genus
    S = [spec.q**n + 1 - counter.count(n, force) for n in range(1, 2 * g + 1)]
    L = newton_from_power_sums(S, 2 * g)
    if L.degree != 2 * g:
        raise OracleMismatch(f"oracle L has degree {L.degree}, expected {2 * g}")
    if not check_functional_equation(L, spec.q, g):
        raise OracleMismatch("oracle L violates the functional equation")
    return L


def psi_part_lpoly(spec: CurveSpec, counter: Counter, c, force: bool = False) -> IntPolynomial:
    """The psi-isotypic factor of degree p^e over Z[zeta]."""
    d = spec.p**spec.e
    S = [counter.twisted_sum(n, c, force) for n in range(1, d + 1)]
    return newton_from_power_sums(S, d)


def lpoly_product(taus: list) -> IntPolynomial:
    return linear_factor_product(taus).to_integers()


def product_of(polys: list) -> IntPolynomial:
    out = IntPolynomial([1])
    for P in polys:
        out = out * P
    return out


def psi_characters(spec: CurveSpec) -> list:
    Fp = build_field(spec.p0, _log(spec.p0, spec.p))
    return [Fp.from_index(i) for i in range(1, Fp.order)]


def delta_characters(spec: CurveSpec, nu: AdditivePolynomial) -> list:
    """Nontrivial psi_c trivial on ker(nu) inside F_p."""
    Fp = build_field(spec.p0, _log(spec.p0, spec.p))
    F1 = build_field(spec.p0, 1)
    K, _ = kernel(nu, Fp)
    out = []
    for c in psi_characters(spec):
        if all(trace(c * z, F1).is_zero() for z in K):
            out.append(c)
    return out


def delta_curve_lpoly(spec: CurveSpec, counter: Counter, psi_parts: dict | None = None, force: bool = False) -> dict:
    """Sub-product over psi factoring through nu, next to a direct count of the delta-curve."""
    delta = spec.delta
    nu = validate_delta(delta, spec.p)
    chars = delta_characters(spec, nu)
    parts = []
    for c in chars:
        P = psi_parts.get(c.index) if psi_parts else None
        parts.append(P if P is not None else psi_part_lpoly(spec, counter, c, force))
    L = product_of(parts).to_integers() if parts else IntPolynomial([1])
    d = L.degree
    S = [spec.q**n + 1 - counter.count_delta(delta, n, force) for n in range(1, d + 1)]
    oracle = newton_from_power_sums(S, d) if d > 0 else IntPolynomial([1])
    if oracle != L:
        raise OracleMismatch(f"delta-curve product {L.as_list()} != oracle {oracle.as_list()}")
    return {"nu": nu, "characters": chars, "L": L, "oracle": oracle}


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

@dataclass
class Verdicts:
    counts: dict
    maximal_at: list
    minimal_at: list
    supersingular: bool
    theorem_checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "maximal_at": self.maximal_at,
            "minimal_at": self.minimal_at,
            "supersingular": self.supersingular,
            "theorem_checks": self.theorem_checks,
        }


def counts_from_L(L: IntPolynomial, q: int, max_n: int) -> dict:
    S = power_sums(L, max_n)
    return {n: q**n + 1 - S[n - 1] for n in range(1, max_n + 1)}


def _bound(q: int, n: int, f: int) -> int | None:
    """q^(n/2) when it is an integer."""
    if (n * f) % 2:
        return None
    return math.isqrt(q**n)


def classify(spec: CurveSpec, L: IntPolynomial, max_n: int | None = None, H_in_Fq2: bool | None = None) -> Verdicts:
    q, g, p0, f = spec.q, spec.genus, spec.p0, spec.f
    top = max(max_n or 0, 4 * p0)
    N = counts_from_L(L, q, top)
    maximal, minimal = [], []
    for n in range(1, top + 1):
        r = _bound(q, n, f)
        if r is None:
            continue
        if N[n] == q**n + 1 + 2 * g * r:
            maximal.append(n)
        if N[n] == q**n + 1 - 2 * g * r:
            minimal.append(n)
    checks: dict = {"mai_1": {"n": 4 * p0, "holds": 4 * p0 in minimal}}
    if f % 2 == 1 and p0 % 4 != 1:
        checks["mai_2"] = {"n": 2 * p0, "applicable": True, "holds": 2 * p0 in maximal}
    else:
        checks["mai_2"] = {"n": 2 * p0, "applicable": False}
    if p0 == 2 and H_in_Fq2:
        checks["mainc"] = {"n": 2, "applicable": True, "holds": 2 in minimal, "f_even": f % 2 == 0}
    else:
        checks["mainc"] = {"n": 2, "applicable": False}
    shown = max_n or top
    return Verdicts(
        {n: N[n] for n in range(1, shown + 1)},
        [n for n in maximal if n <= shown],
        [n for n in minimal if n <= shown],
        4 * p0 in minimal,
        checks,
    )


def roots_supersingular(taus: list, q: int, p0: int) -> bool:
    return all(t ** (4 * p0) == q ** (2 * p0) for t in taus)


def feasible(q: int, n: int, budget: int) -> bool:
    return q**n <= budget
