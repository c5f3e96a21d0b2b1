import random

import pytest

from vdgv.addpoly import (
    AdditivePolynomial,
    SparsePoly,
    TwistedBiForm,
    inner_divide,
    kernel,
    make_ER,
    make_fR,
    outer_divide,
    solve_field,
    splitting_degree,
    validate_delta,
    verify_identity_a,
    x_times,
)
from vdgv.errors import NotReduced, RootsNotInFp
from vdgv.gf import build_field, embed


def poly(ctx, coeffs, p=None):
    """sum coeffs[i] x^(p^i); p defaults to p0."""
    return AdditivePolynomial.from_step(ctx, coeffs, p or ctx.p0)


# pointwise versions of the defining formulas, used as oracles
def E_pointwise(R, a, x):
    p, e = R.step, R.e
    out = R(x) ** (p**e)
    for i, ai in enumerate(a):
        out = out + (ai * x) ** (p ** (e - i))
    return out


def f_pointwise(R, a, x, y):
    p, e = R.step, R.e
    out = x.ctx.zero
    for i in range(e):
        for j in range(e - i):
            out = out - (a[i] * x ** (p**i) * y) ** (p**j)
        out = out - (x * R(y)) ** (p**i)
    return out


def test_make_ER_running(F3):
    R = poly(F3, [-1, 1])
    assert make_ER(R) == poly(F3, [1, 1, 1])


def test_make_ER_char2(F4):
    R = poly(F4, [0, 1])
    assert make_ER(R) == poly(F4, [1, 0, 1])


def test_make_ER_e0(F3):
    c = F3.from_int(2)
    assert make_ER(poly(F3, [c])) == poly(F3, [c * 2])


def test_make_fR_examples(F3, F4):
    f = make_fR(poly(F3, [-1, 1]))
    assert f == TwistedBiForm(F3, {(0, 1): F3.from_int(2), (0, 0): F3.from_int(2)})
    g = make_fR(poly(F4, [0, 1]))
    assert g == TwistedBiForm(F4, {(0, 1): F4.one})
    assert make_fR(poly(F3, [1])).is_zero()


@pytest.mark.parametrize(
    "p0,f,coeffs",
    [(3, 1, [[2], [1]]), (2, 2, [[0], [1]]), (3, 2, [[1], [1], [0, 1]]), (5, 1, [[1], [4]]), (3, 2, [[0, 1], [2, 2]])],
)
def test_forms_match_pointwise_definitions(p0, f, coeffs):
    ctx = build_field(p0, f)
    a = [ctx.element(c) for c in coeffs]
    R = poly(ctx, a)
    E, fR = make_ER(R), make_fR(R)
    big = build_field(p0, f * 3)
    rng = random.Random(p0 * 100 + f)
    ab = [embed(x, big) for x in a]
    for _ in range(60):
        x, y = big.from_index(rng.randrange(big.order)), big.from_index(rng.randrange(big.order))
        assert E(x) == E_pointwise(R, ab, x)
        assert fR(x, y) == f_pointwise(R, ab, x, y)
        # identity (a) at a point
        p, e = R.step, R.e
        v = fR(x, y)
        assert v**p - v == -(x ** (p**e)) * E(y) + x * R(y) + y * R(x)


def test_identity_a_examples(F3, F4, F9):
    assert verify_identity_a(poly(F3, [-1, 1]))
    assert verify_identity_a(poly(F4, [0, 1]))
    assert verify_identity_a(poly(F9, [F9.one, F9.one, F9.gen]))


def test_identity_a_random_grid():
    rng = random.Random(5)
    for p0 in (2, 3, 5):
        for f in (1, 2):
            ctx = build_field(p0, f)
            for e in (0, 1, 2):
                if p0 == 2 and e == 0:
                    continue
                for _ in range(3):
                    a = [ctx.from_index(rng.randrange(ctx.order)) for _ in range(e)]
                    a.append(ctx.from_index(rng.randrange(1, ctx.order)))
                    assert verify_identity_a(poly(ctx, a)), (p0, f, a)


def test_identity_a_detects_a_wrong_form(F3):
    R = poly(F3, [-1, 1])
    bad = make_fR(R)
    bad.add_term(0, 0, F3.one)
    E = make_ER(R)
    lhs = bad.frob(1) - bad
    rhs = TwistedBiForm(F3)
    for j, c in enumerate(E.coeffs):
        rhs.add_term(1, j, -c)
    for j, c in enumerate(R.coeffs):
        rhs.add_term(0, j, c)
        rhs.add_term(j, 0, c)
    assert lhs != rhs


def test_compose_examples(F3, F4):
    g, f = poly(F3, [2, 1]), poly(F3, [-1, 1])
    assert g.compose(f) == poly(F3, [1, 1, 1])
    one = poly(F3, [1])
    assert one.compose(f) == f and f.compose(one) == f
    sq = poly(F4, [0, 1])
    assert sq.compose(sq) == poly(F4, [0, 0, 1])


def test_compose_matches_evaluation(F9):
    rng = random.Random(2)
    for _ in range(10):
        g = AdditivePolynomial(F9, [F9.from_index(rng.randrange(9)) for _ in range(3)])
        f = AdditivePolynomial(F9, [F9.from_index(rng.randrange(9)) for _ in range(3)])
        h = g.compose(f)
        for x in F9.elements():
            assert h(x) == g(f(x))


def test_outer_divide_examples(F3):
    h, f = poly(F3, [1, 1, 1]), poly(F3, [-1, 1])
    assert outer_divide(h, f) == poly(F3, [2, 1])
    assert outer_divide(f, f) == poly(F3, [1])


def test_outer_divide_field_trace(F3):
    # x^9 - x over F_3 divided by x^3 - x: the quotient a satisfies a(x^3 - x) = x^9 - x
    h, f = poly(F3, [-1, 0, 1]), poly(F3, [-1, 1])
    a = outer_divide(h, f)
    assert a.compose(f) == h
    assert a == poly(F3, [1, 1])


def test_inner_divide_examples(F3):
    F2 = build_field(2, 1)
    h, g = poly(F2, [1, 0, 1]), poly(F2, [1, 1])
    assert inner_divide(h, g) == poly(F2, [1, 1])
    assert inner_divide(g, g) == poly(F2, [1])
    assert inner_divide(poly(F3, [1, 1, 1]), poly(F3, [2, 1])) == poly(F3, [-1, 1])


def test_division_roundtrip_random():
    rng = random.Random(9)
    F = build_field(3, 2)
    for _ in range(20):
        g = AdditivePolynomial(F, [F.from_index(rng.randrange(9)) for _ in range(2)] + [F.from_index(rng.randrange(1, 9))])
        f = AdditivePolynomial(F, [F.from_index(rng.randrange(9)) for _ in range(2)] + [F.one])
        h = g.compose(f)
        assert outer_divide(h, f).compose(f) == h
        assert g.compose(inner_divide(h, g)) == h


def test_outer_divide_rejects_non_divisor(F3):
    with pytest.raises(Exception):
        outer_divide(poly(F3, [1, 1]), poly(F3, [-1, 1]))


def test_kernel_examples(F3, F9):
    basis, full = kernel(poly(F3, [-1, 1]), F3)
    assert basis == [F3.one] and full
    E = poly(F3, [1, 1, 1])
    b9, full9 = kernel(E, F9)
    assert len(b9) == 1 and not full9
    F27 = build_field(3, 3)
    b27, full27 = kernel(E, F27)
    assert len(b27) == 2 and full27
    assert all(E(v).is_zero() for v in b27)


def test_kernel_size_by_enumeration():
    F27 = build_field(3, 3)
    E = poly(build_field(3, 1), [1, 1, 1])
    roots = [x for x in F27.elements() if E(x).is_zero()]
    basis, _ = kernel(E, F27)
    assert len(roots) == 3 ** len(basis)


def test_splitting_degree(F3, F4):
    assert splitting_degree(poly(F3, [-1, 1])) == 1
    assert splitting_degree(poly(F3, [1, 1, 1])) == 3
    F2 = build_field(2, 1)
    assert splitting_degree(poly(F2, [1, 0, 1])) == 2


def test_validate_delta():
    F16 = build_field(2, 4)
    d = AdditivePolynomial(F16, [1, 1])
    assert validate_delta(d, 4) == AdditivePolynomial(F16, [1, 1])
    F3 = build_field(3, 1)
    assert validate_delta(poly(F3, [-1, 1]), 3) == poly(F3, [1])
    with pytest.raises(RootsNotInFp):
        validate_delta(poly(F3, [1, 1]), 3)
    with pytest.raises(NotReduced):
        validate_delta(poly(F3, [0, 1]), 3)


def test_from_kernel_basis(F9):
    F = AdditivePolynomial.from_kernel_basis(F9, [F9.one])
    assert F == poly(F9, [-1, 1])
    for x in F9.elements():
        assert F(x).is_zero() == (x.index < 3)


def test_additive_evaluation_is_linear(F9):
    f = AdditivePolynomial(F9, [F9.gen, F9.one, F9.gen + 1])
    for x in F9.elements():
        for y in F9.elements():
            assert f(x + y) == f(x) + f(y)
        assert f(x * 2) == f(x) * 2


def test_sparse_poly_compose_and_shift(F3):
    x2 = SparsePoly.monomial(F3, 2, 2)
    u = poly(F3, [-1, 1])
    comp = x2.compose_additive(u)
    sh = x2.shift(F3.one)
    for x in F3.elements():
        assert comp(x) == x2(u(x))
        assert sh(x) == x2(x + 1)


def test_running_example_x1_by_expansion(F3):
    # x^4 - x^2 = (x^3 - x)^2 + (2x^2)^3 - 2x^2
    lhs = x_times(poly(F3, [-1, 1]))
    F = poly(F3, [-1, 1]).to_sparse()
    D = SparsePoly.monomial(F3, 2, 2)
    assert lhs == F * F + D.frob(1) - D


def test_solve_field_simple(F3):
    x = SparsePoly.monomial(F3, 1)
    cols = [x, x * x]
    target = x * 2 + x * x
    assert solve_field(cols, target) == [F3.from_int(2), F3.one]
    assert solve_field([x], x * x) is None
