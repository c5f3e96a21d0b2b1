import itertools
import random

import pytest

from vdgv.errors import NotASubfield, NotPrime, SizeGuardExceeded
from vdgv.gf import (
    build_field,
    check_size,
    embed,
    frobenius,
    is_irreducible,
    linear_solve,
    nullspace_mod,
    quadratic_character,
    rank_mod,
    solve_mod,
    span,
    to_subfield,
    trace,
)


def brute_irreducible(f, p):
    """No monic factor of degree <= deg/2, by trial division over all of them."""
    m = len(f) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            r = list(f)
            for i in range(m - d, -1, -1):
                c = r[i + d]
                for j in range(d + 1):
                    r[i + j] = (r[i + j] - c * g[j]) % p
            if not any(r[:d]):
                return False
    return True


def test_prime_field_modulus(F3):
    assert F3.modulus == (0, 1)
    assert F3.order == 3


def test_F9_modulus_is_smallest(F9):
    assert F9.modulus == (1, 0, 1)
    # nothing earlier in the fixed order is irreducible
    for c0, c1 in itertools.product(range(3), repeat=2):
        if (c0, c1) < (1, 0):
            assert not brute_irreducible([c0, c1, 1], 3)


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_rabin_matches_trial_division(p, m):
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        assert is_irreducible(f, p) == brute_irreducible(f, p), f


def test_F16_every_element_fixed_by_x16():
    F16 = build_field(2, 4)
    assert all(x**16 == x for x in F16.elements())
    assert len(set(F16.elements())) == 16


def test_not_prime():
    with pytest.raises(NotPrime):
        build_field(4, 1)


def test_size_guard():
    with pytest.raises(SizeGuardExceeded):
        check_size(2**41)
    check_size(2**41, force=True)


def test_embed_identity_on_prime_field(F3, F9):
    assert embed(F3.one, F9) == F9.one


def test_embed_generator_of_F4(F4):
    F16 = build_field(2, 4)
    g = embed(F4.gen, F16)
    assert g * g + g + 1 == F16.zero


def test_embed_transitive(F3, F9):
    F81 = build_field(3, 4)
    for x in F3.elements():
        assert embed(embed(x, F9), F81) == embed(x, F81)


def test_embed_is_homomorphism(F4):
    F64 = build_field(2, 6)
    for x in F4.elements():
        for y in F4.elements():
            assert embed(x * y, F64) == embed(x, F64) * embed(y, F64)
            assert embed(x + y, F64) == embed(x, F64) + embed(y, F64)


def test_embed_wrong_degree(F9):
    with pytest.raises(NotASubfield):
        embed(F9.gen, build_field(3, 3))


def test_to_subfield_roundtrip(F9):
    F81 = build_field(3, 4)
    for x in F9.elements():
        assert to_subfield(embed(x, F81), F9) == x


def test_frobenius_F9(F9):
    g = F9.gen
    assert frobenius(g, 2) == g
    assert frobenius(g, 1) == -g


def test_frobenius_prime_field():
    F7 = build_field(7, 1)
    assert frobenius(F7.from_int(5), 1) == F7.from_int(5)


def test_frobenius_is_ring_map(F9):
    for x in F9.elements():
        for y in F9.elements():
            assert frobenius(x * y) == frobenius(x) * frobenius(y)
            assert frobenius(x + y) == frobenius(x) + frobenius(y)


def test_trace_examples(F3, F4, F9):
    F2 = build_field(2, 1)
    assert trace(F9.gen, F3) == F3.zero
    assert trace(F9.one, F3) == F3.from_int(2)
    assert trace(F4.one, F2) == F2.zero


def test_trace_transitive_and_onto():
    F3 = build_field(3, 1)
    F9 = build_field(3, 2)
    F81 = build_field(3, 4)
    images = set()
    for x in F81.elements():
        t = trace(x, F3)
        assert t == trace(trace(x, F9), F3)
        images.add(t)
    assert len(images) == 3


def test_quadratic_character(F3, F9):
    assert quadratic_character(F3.from_int(1)) == 1
    assert quadratic_character(F3.from_int(2)) == -1
    assert quadratic_character(F3.zero) == 0
    # a generator of F_9^x is a non-square
    gens = [x for x in F9.elements() if not x.is_zero() and len({(x**i).c for i in range(8)}) == 8]
    assert gens and all(quadratic_character(g) == -1 for g in gens)


def test_linear_solve_identity(F9):
    M = F9.matrix_of(lambda z: z)
    sol = linear_solve(M, F9.gen)
    assert sol.particular == F9.gen and sol.kernel == []


def test_linear_solve_artin_schreier_kernel(F3, F9):
    M = F9.matrix_of(lambda z: z**3 - z)
    sol = linear_solve(M, F9.zero)
    assert len(sol.kernel) == 1
    assert sorted(x.index for x in sol.all()) == sorted(embed(x, F9).index for x in F3.elements())


def test_linear_solve_x2_plus_x(F4):
    M = F4.matrix_of(lambda z: z * z + z)
    sols = set(linear_solve(M, F4.one).all())
    assert sols == {x for x in F4.elements() if x * x + x == F4.one}
    assert sols == {F4.gen, F4.gen + 1}


def test_linear_solve_no_solution(F4):
    M = F4.matrix_of(lambda z: z * z + z)
    assert linear_solve(M, F4.gen) is None


def test_mod_p_linear_algebra_random():
    rng = random.Random(7)
    for _ in range(30):
        rows = [[rng.randrange(5) for _ in range(4)] for _ in range(3)]
        ns = nullspace_mod(rows, 5, 4)
        assert len(ns) == 4 - rank_mod(rows, 5)
        for v in ns:
            assert all(sum(a * b for a, b in zip(r, v)) % 5 == 0 for r in rows)
        x = [rng.randrange(5) for _ in range(4)]
        rhs = [sum(a * b for a, b in zip(r, x)) % 5 for r in rows]
        y = solve_mod(rows, rhs, 5)
        assert [sum(a * b for a, b in zip(r, y)) % 5 for r in rows] == rhs


def test_field_axioms_sampled():
    F = build_field(5, 3)
    rng = random.Random(1)
    for _ in range(200):
        x, y, z = (F.from_index(rng.randrange(F.order)) for _ in range(3))
        assert (x + y) * z == x * z + y * z
        assert (x * y) * z == x * (y * z)
        if not x.is_zero():
            assert x * x.inverse() == F.one


def test_span_sorted(F9):
    s = span([F9.gen])
    assert len(s) == 3
    assert [x.index for x in s] == sorted(x.index for x in s)
