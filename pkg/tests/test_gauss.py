import pytest

from vdgv.cyclo import cyclo_ring
from vdgv.errors import HypothesisViolated, NonIntegral
from vdgv.gauss import (
    PsiFq,
    build_descent,
    check_corollary_2c,
    eta_of_xi,
    gauss_sum_G,
    proposition_47,
    tau_closed_form,
    tau_via_schur,
    tau_via_sum,
    twisted_sum_Fq,
)
from vdgv.gf import build_field
from vdgv.heis import Heisenberg, HeisenbergElement, characters_extending, maximal_isotropic_rational
from vdgv.lfunc import make_spec

Z3 = cyclo_ring(3)
z = Z3.zeta()


def _by_xi10(an):
    """xi indexed by the exponent of xi((1,0))."""
    F3 = an.spec.ctx
    AR = an.AR
    chars = characters_extending(AR, F3.one)
    return {xi(AR, HeisenbergElement(F3.one, F3.zero)): xi for xi in chars}


def test_descent_running(running, F3):
    d = running.descent
    for t, h in d.table:
        assert h.a == t and h.b.is_zero()
    assert d.table[0][1] == HeisenbergElement(F3.zero, F3.zero)


def test_descent_p5():
    spec = make_spec(5, 1, 5, [[-1], [1]])
    G = Heisenberg(spec.R)
    A = maximal_isotropic_rational(G)
    d = build_descent(G, A)
    for t, h in d.table:
        assert h.a == t and G.contains(h)


def test_tau_sum_running(running):
    xis = _by_xi10(running)
    d, AR = running.descent, running.AR
    assert tau_via_sum(xis[0], AR, d) == z - 1
    assert tau_via_sum(xis[1], AR, d) == -(1 + 2 * z)
    assert tau_via_sum(xis[2], AR, d) == z - 1


def test_eta_running(running, F3):
    xis = _by_xi10(running)
    d, AR = running.descent, running.AR
    assert eta_of_xi(xis[0], AR, d, F3.one) == F3.from_int(2)
    assert eta_of_xi(xis[1], AR, d, F3.one) == F3.zero
    assert eta_of_xi(xis[2], AR, d, F3.one) == F3.one


def test_gauss_sums():
    G3 = Heisenberg(make_spec(3, 1, 3, [[1]]).R)
    assert gauss_sum_G(G3, G3.ctx.one) == 1 + 2 * z
    G5 = Heisenberg(make_spec(5, 1, 5, [[1]]).R)
    z5 = cyclo_ring(5).zeta()
    assert gauss_sum_G(G5, G5.ctx.one) == 1 + 2 * z5 + 2 * z5**4
    G9 = Heisenberg(make_spec(3, 2, 3, [[1]]).R)
    g = gauss_sum_G(G9, G9.Fp.one)
    assert g * g.conj() == 9


def test_closed_form_running(running, F3):
    c_A = running.c_A
    assert tau_closed_form(running.G, F3.one, F3.from_int(2), c_A) == z - 1
    assert tau_closed_form(running.G, F3.one, F3.zero, c_A) == -(1 + 2 * z)
    assert tau_closed_form(running.G, F3.one, F3.one, c_A) == z - 1


def test_schur_char2(G_two):
    F2 = build_field(2, 1)
    assert twisted_sum_Fq(G_two, F2.one) == -4
    tau = tau_via_schur(G_two, F2.one)
    assert tau == -2 and tau * tau == 4


def test_schur_refuses_odd_f():
    # p0 = 2, f odd: the hypothesis H_R in F_q^2 cannot hold, so no value comes back
    G = Heisenberg(make_spec(2, 1, 2, [[0], [1]]).R)
    with pytest.raises((HypothesisViolated, NonIntegral)):
        tau_via_schur(G, build_field(2, 1).one)


def test_schur_refuses_odd_p0(G_run, F3):
    with pytest.raises(HypothesisViolated):
        tau_via_schur(G_run, F3.one)


def test_corollary_2c():
    assert check_corollary_2c(z - 1, 3, 3, 1) == {"power_4p0": True, "power_2p0": True}
    assert check_corollary_2c(-(1 + 2 * z), 3, 3, 1)["power_2p0"]
    assert check_corollary_2c(cyclo_ring(4)(-2), 4, 2, 2) == {"power_4p0": True}


def test_proposition_47(running):
    assert proposition_47(running.G, running.descent, running.c_A)


def test_psi_on_Fq_is_additive(F9):
    G = Heisenberg(make_spec(3, 2, 3, [[2], [1]]).R)
    psi = PsiFq(G, G.Fp.one)
    for s in F9.elements():
        for t in F9.elements():
            assert psi(s + t) == (psi(s) + psi(t)) % 3


def test_sum_rule_running(running):
    taus = [r["tau"] for r in running.tau_table if r["psi"] == running.spec.ctx.one]
    total = sum(taus[1:], taus[0])
    assert total == twisted_sum_Fq(running.G, running.spec.ctx.one)


def test_tau_e2_routes_agree(small_grid):
    for an, _ in small_grid:
        if an.tau_table is None:
            continue
        for r in an.tau_table:
            assert r["routes_agree"]
            assert r["tau"] * r["tau"].conj() == an.spec.q
