"""Acceptance criteria 1-8. The conftest prints one PASS/FAIL line per criterion."""

import collections
import random
import time

from vdgv.cyclo import IntPolynomial, newton_from_power_sums, power_sums
from vdgv.gf import build_field
from vdgv.grid import CHAR2, DELTA, RUNNING
from vdgv.lfunc import Counter, check_functional_equation, counts_from_L, make_spec
from vdgv.pipeline import Analysis

RUNNING_L = [1, 6, 18, 36, 54, 54, 27]
REQUIRED_CELLS = {(3, 1, 0), (3, 1, 1), (3, 2, 1), (5, 1, 1), (2, 2, 1)}


def _cells(small_grid):
    return {(an.spec.p0, an.spec.f, an.spec.e) for an, _ in small_grid}


def _status(results, name):
    return results[name]["status"]


def test_criterion_1_running_example():
    t = time.perf_counter()
    an = Analysis(make_spec(**RUNNING))
    oracle, product = an.L_oracle, an.L_product
    elapsed = time.perf_counter() - t
    assert oracle is not None and product is not None
    assert oracle.as_list() == RUNNING_L
    assert product.as_list() == RUNNING_L
    assert len(an.tau_table) == 6
    assert an.verdicts(12).maximal_at == [6]
    assert elapsed < 10, elapsed


def test_criterion_2_counts_over_f3_6_and_f3_12():
    L = IntPolynomial(RUNNING_L)
    derived = counts_from_L(L, 3, 12)
    assert derived[6] == 892 == 3**6 + 1 + 2 * 3 * 3**3
    assert derived[12] == 527068 == 3**12 + 1 - 2 * 3 * 3**6
    t = time.perf_counter()
    direct = Counter(make_spec(**RUNNING)).count(12)
    elapsed = time.perf_counter() - t
    assert direct == 527068
    assert elapsed < 10, elapsed


def test_criterion_3_characteristic_two():
    t = time.perf_counter()
    an = Analysis(make_spec(**CHAR2))
    taus = [r["tau"] for r in an.tau_table]
    L = an.L
    v = an.verdicts(4)
    elapsed = time.perf_counter() - t
    assert len(taus) == 2 and all("schur" in r["routes"] for r in an.tau_table)
    assert all(tau == -2 for tau in taus)
    assert L == IntPolynomial([1, 2]) * IntPolynomial([1, 2])
    assert counts_from_L(L, 4, 2)[2] == 9
    assert an.counter.count(2) == 9
    assert 2 in v.minimal_at and v.theorem_checks["mainc"]["holds"]
    assert elapsed < 1, elapsed


def _roots_satisfy(L, q, k, target):
    # every reciprocal root alpha has alpha^k == target, read off the power sums
    d = L.degree
    S = power_sums(L, k * d)
    return all(S[k * j - 1] == d * target**j for j in range(1, d + 1))


def test_criterion_4_gauss_sum_routes(small_grid):
    assert REQUIRED_CELLS <= _cells(small_grid)
    checked = 0
    for an, _ in small_grid:
        spec = an.spec
        q, p0, f = spec.q, spec.p0, spec.f
        maximal_case = f % 2 == 1 and p0 % 4 != 1
        if an.tau_table is None:
            # p0 = 2 with H_R outside F_q^2: no per-character tau, so check the same
            # statements on the reciprocal roots of L
            assert p0 == 2
            assert _roots_satisfy(an.L, q, 4 * p0, q ** (2 * p0))
            if maximal_case:
                assert _roots_satisfy(an.L, q, 2 * p0, -(q**p0))
            continue
        for r in an.tau_table:
            tau = r["tau"]
            if p0 != 2:
                assert r["routes"]["sum"] == r["routes"]["closed_form"]
            assert tau * tau.conj() == q
            assert tau ** (4 * p0) == q ** (2 * p0)
            if maximal_case:
                assert tau ** (2 * p0) == -(q**p0)
            checked += 1
    assert checked > 0


IDENTITY_SUITES = ["identity_a", "omega_symplectic", "center", "element_orders"]
ODD_CHAIN_SUITES = ["cd", "cd2", "x1", "proposition_47"]


def test_criterion_5_identity_suites(small_grid):
    for an, results in small_grid:
        name = an.spec.to_json()
        for s in IDENTITY_SUITES:
            assert _status(results, s) == "pass", (name, s, results[s])
        if an.spec.p0 != 2:
            for s in ODD_CHAIN_SUITES:
                want = {"pass", "skipped"} if (an.spec.e == 0 and s in ("cd", "cd2")) else {"pass"}
                assert _status(results, s) in want, (name, s, results[s])
        if an.tau_table is not None:
            assert _status(results, "sum_rule") == "pass", (name, results["sum_rule"])
        assert all(r["status"] != "fail" for r in results.values()), name


def test_criterion_6_c_A_certification(small_grid):
    odd = 0
    for an, results in small_grid:
        if an.spec.p0 == 2:
            continue
        odd += 1
        assert _status(results, "x1") == "pass"
        assert _status(results, "c_A") == "pass"
        cf = an.closed_forms
        assert cf["lemma_agrees"], (an.spec.to_json(), cf)
        assert isinstance(cf["display_agrees"], bool)
        assert "display_agrees" in results["c_A"]["detail"]
    assert odd > 0


def test_criterion_7_zeta_sanity(small_grid):
    for an, _ in small_grid:
        spec = an.spec
        L = an.L
        assert L.degree == (spec.p - 1) * spec.p**spec.e == 2 * spec.genus
        assert check_functional_equation(L, spec.q, spec.genus)
        assert an.L_psi is not None and an.L_psi == L
    rng = random.Random(20260101)
    for _ in range(200):
        d = rng.randint(0, 8)
        P = IntPolynomial([1] + [rng.randint(-50, 50) for _ in range(d)])
        deg = P.degree
        assert newton_from_power_sums(power_sums(P, deg), deg) == P


def _naive_delta_counts(spec, n_max):
    """Points of y^2 + y = x R(x) over F_{q^n}, by tabulating y^2 + y."""
    out = []
    for n in range(1, n_max + 1):
        big = build_field(spec.p0, spec.f * n)
        fibre = collections.Counter(y * y + y for y in big.elements())
        out.append(1 + sum(fibre.get(x * spec.R(x), 0) for x in big.elements()))
    return out


def test_criterion_8_delta_curve():
    t = time.perf_counter()
    an = Analysis(make_spec(**DELTA))
    d = an.delta_result
    elapsed = time.perf_counter() - t
    assert d["L"] == d["oracle"]
    assert elapsed < 60, elapsed
    # a second, naive oracle over F_16 and F_256
    spec = an.spec
    naive = _naive_delta_counts(spec, 2)
    derived = counts_from_L(d["L"], spec.q, 2)
    assert naive == [derived[1], derived[2]]
