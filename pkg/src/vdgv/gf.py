"""Finite fields F_{p^m} built as a lazily grown, compatibly embedded tower.

An element is a coordinate vector over F_p in the power basis of the modulus of
its context.  The modulus of F_{p^m} is the lexicographically smallest monic
irreducible polynomial of degree m, coefficients compared low-to-high, so that
contexts and printed coordinates are reproducible.

Embeddings F_{p^d} -> F_{p^m} are fixed once per (p, d, m) by choosing, among
the d roots of the small modulus inside the big field, the first one (in
enumeration order) that agrees with the embeddings of every intermediate
subfield.  This makes ``embed`` transitive along any chain d | k | m and
independent of the order in which fields were first requested.

Elements are enumerated by *index*: the integer sum(c_i * p**i) of the
coordinates.  "Smallest element" always means smallest index.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import EvenCharacteristic, NotASubfield, NotPrime, SizeGuardExceeded

SIZE_GUARD = 2**40


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def check_size(count: int, force: bool = False, what: str = "enumeration") -> None:
    if count > SIZE_GUARD and not force:
        raise SizeGuardExceeded(f"{what} of {count} elements exceeds the size guard {SIZE_GUARD}")


# ---------------------------------------------------------------------------
# Linear algebra over F_p.  Matrices are lists of rows of ints.
# ---------------------------------------------------------------------------

def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    M = [[x % p for x in r] for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                Mi, Mr = M[i], M[r]
                M[i] = [(a - f * b) % p for a, b in zip(Mi, Mr)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[1])


def nullspace_mod(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of {v : rows @ v = 0} over F_p."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i][fc]) % p
        basis.append(v)
    return basis


def solve_mod(rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> list[int] | None:
    """One solution of rows @ v = rhs over F_p, or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, p)
    if ncols in pivots:
        return None
    v = [0] * ncols
    for i, pc in enumerate(pivots):
        v[pc] = R[i][ncols]
    return v


def transpose(M: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(c) for c in zip(*M)]


def matvec(M: Sequence[Sequence[int]], v: Sequence[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in M]


# ---------------------------------------------------------------------------
# Polynomials over the prime field (coefficient lists, low to high)
# ---------------------------------------------------------------------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _ptrim([x % p for x in a])
    b = _ptrim([x % p for x in b])
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = (a[i] * inv) % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _ptrim(q), _ptrim(a[:db])


def _pmulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _pdivmod(prod, f, p)[1]


def _ppowmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result, base = [1], _pdivmod(a, f, p)[1]
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return _pdivmod(result, f, p)[1]


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _ptrim([x % p for x in a]), _ptrim([x % p for x in b])
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [(x * inv) % p for x in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] % p == 0:
        return False
    # frob[k] = x^(p^k) mod f
    frob = [[0, 1]]
    for _ in range(m):
        frob.append(_ppowmod(frob[-1], p, f, p))
    if _ptrim(list(frob[m])) != [0, 1]:
        return False
    for r in prime_factors(m):
        h = list(frob[m // r]) + [0] * 2
        h[1] = (h[1] - 1) % p
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (low-to-high)."""
    if m == 1:
        return (0, 1)
    # constant term 0 means divisible by x, so that whole block is skipped
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=m - 1):
            f = [c0, *rest, 1]
            if is_irreducible(f, p):
                return tuple(f)
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# Field contexts and elements
# ---------------------------------------------------------------------------

class FieldCtx:
    """The field F_{p0^m} = F_{p0}[x]/(modulus).  Immutable; one per (p0, m)."""

    def __init__(self, p0: int, m: int, modulus: Sequence[int]):
        self.p0 = p0
        self.m = m
        self.modulus = tuple(modulus)
        self.order = p0**m
        red = []
        if m > 1:
            cur = [(-c) % p0 for c in self.modulus[:m]]
            for _ in range(m, 2 * m - 1):
                red.append(tuple(cur))
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c + top * r) % p0 for c, r in zip(cur, red[0])]
        self._red = red
        self.zero = FieldElement(self, (0,) * m)
        self.one = FieldElement(self, (1,) + (0,) * (m - 1))
        self.gen = self.element([0, 1]) if m > 1 else self.zero

    def __repr__(self) -> str:
        return f"GF({self.p0}^{self.m})"

    def __reduce__(self):
        return (_build_field, (self.p0, self.m))

    # construction -----------------------------------------------------------
    def element(self, coords: Sequence[int]) -> FieldElement:
        coords = [int(c) % self.p0 for c in coords]
        if len(coords) > self.m:
            raise ValueError(f"{len(coords)} coordinates given for {self!r}")
        coords += [0] * (self.m - len(coords))
        return FieldElement(self, tuple(coords))

    __call__ = element

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, (n % self.p0,) + (0,) * (self.m - 1))

    def from_index(self, idx: int) -> FieldElement:
        c = []
        for _ in range(self.m):
            idx, r = divmod(idx, self.p0)
            c.append(r)
        return FieldElement(self, tuple(c))

    def basis(self) -> list[FieldElement]:
        return [FieldElement(self, tuple(int(i == j) for i in range(self.m))) for j in range(self.m)]

    def elements(self, force: bool = False) -> Iterator[FieldElement]:
        check_size(self.order, force)
        for idx in range(self.order):
            yield self.from_index(idx)

    # raw arithmetic on coordinate tuples ---------------------------------------
    def _mul(self, a: tuple, b: tuple) -> tuple:
        p, m = self.p0, self.m
        if m == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        res = prod[:m]
        for k, row in enumerate(self._red):
            c = prod[m + k] % p
            if c:
                for j in range(m):
                    res[j] += c * row[j]
        return tuple(x % p for x in res)

    # F_p-linear maps -----------------------------------------------------------
    def matrix_of(self, fn: Callable[[FieldElement], FieldElement], target: FieldCtx | None = None) -> list[list[int]]:
        """Matrix (rows = target coordinates, columns = basis images) of an F_p-linear map."""
        target = target or self
        cols = [fn(b).c for b in self.basis()]
        return [[cols[j][i] for j in range(self.m)] for i in range(target.m)]

    @functools.lru_cache(maxsize=None)
    def frobenius_matrix(self, k: int = 1) -> tuple[tuple[int, ...], ...]:
        M = self.matrix_of(lambda x: frobenius(x, k))
        return tuple(tuple(r) for r in M)

    # vectorised helpers (numpy, used by bulk enumeration) ----------------------
    def coords_array(self, start: int, stop: int) -> np.ndarray:
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.empty((stop - start, self.m), dtype=np.int64)
        for i in range(self.m):
            out[:, i] = idx % self.p0
            idx //= self.p0
        return out

    def mul_arrays(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        p, m = self.p0, self.m
        if m == 1:
            return (X * Y) % p
        C = np.zeros((X.shape[0], 2 * m - 1), dtype=np.int64)
        for i in range(m):
            C[:, i:i + m] += X[:, i:i + 1] * Y
        C %= p
        red = np.array(self._red, dtype=np.int64)
        return (C[:, :m] + C[:, m:] @ red) % p

    def index_of_array(self, X: np.ndarray) -> np.ndarray:
        w = self.p0 ** np.arange(self.m, dtype=np.int64)
        return X @ w


class FieldElement:
    """A value of a FieldCtx; ``c`` is the coordinate tuple over F_{p0}."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, c: tuple):
        self.ctx = ctx
        self.c = c

    def _coerce(self, other) -> tuple | None:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise TypeError(f"mixed fields {self.ctx!r} and {other.ctx!r}; embed first")
            return other.c
        if isinstance(other, int):
            return self.ctx.from_int(other).c
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.ctx.p0
        return FieldElement(self.ctx, tuple((a + b) % p for a, b in zip(self.c, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.ctx.p0
        return FieldElement(self.ctx, tuple((a - b) % p for a, b in zip(self.c, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.ctx.p0
        return FieldElement(self.ctx, tuple((-a) % p for a in self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._mul(self.c, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if not any(self.c):
            return self.ctx.one if e == 0 else self
        e %= self.ctx.order - 1
        if e == 0:
            return self.ctx.one
        result, base = self.ctx.one.c, self.c
        mul = self.ctx._mul
        while e:
            if e & 1:
                result = mul(result, base)
            base = mul(base, base)
            e >>= 1
        return FieldElement(self.ctx, result)

    def inverse(self) -> FieldElement:
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, int):
            return self.c == self.ctx.from_int(other).c
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p0, self.ctx.m, self.c))

    def __bool__(self):
        return any(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    @property
    def index(self) -> int:
        p, n = self.ctx.p0, 0
        for x in reversed(self.c):
            n = n * p + x
        return n

    def lift(self) -> int:
        """The integer 0..p0-1 representing an element of the prime subfield."""
        if any(self.c[1:]):
            raise NotASubfield(f"{self} is not in the prime field")
        return self.c[0]

    def __repr__(self):
        return f"{self.ctx!r}{list(self.c)}"


# ---------------------------------------------------------------------------
# Tower construction
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _build_field(p0: int, m: int) -> FieldCtx:
    return FieldCtx(p0, m, smallest_irreducible(p0, m))


def build_field(p0: int, m: int, force: bool = False) -> FieldCtx:
    """The unique context for F_{p0^m}."""
    if not is_prime(p0):
        raise NotPrime(f"{p0} is not prime")
    if m < 1:
        raise ValueError("degree must be positive")
    check_size(p0**m, force, what=f"field GF({p0}^{m})")
    return _build_field(p0, m)


# polynomials with coefficients in a FieldCtx (lists of FieldElement, low-to-high)

def _ftrim(a: list) -> list:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _fdivmod(a: list, b: list) -> tuple[list, list]:
    a, b = _ftrim(list(a)), _ftrim(list(b))
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    inv = b[-1].inverse()
    q = [b[0].ctx.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = a[i - db + j] - c * b[j]
    return _ftrim(q), _ftrim(a[:db])


def _fmulmod(a: list, b: list, f: list) -> list:
    if not a or not b:
        return []
    zero = f[0].ctx.zero
    prod = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = prod[i + j] + x * y
    return _fdivmod(prod, f)[1]


def _fpowmod(a: list, e: int, f: list) -> list:
    result, base = [f[0].ctx.one], _fdivmod(a, f)[1]
    while e:
        if e & 1:
            result = _fmulmod(result, base, f)
        base = _fmulmod(base, base, f)
        e >>= 1
    return _fdivmod(result, f)[1]


def _fgcd(a: list, b: list) -> list:
    a, b = _ftrim(list(a)), _ftrim(list(b))
    while b:
        a, b = b, _fdivmod(a, b)[1]
    if a:
        inv = a[-1].inverse()
        a = [x * inv for x in a]
    return a


def _fadd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    zero = (a or b)[0].ctx.zero
    a = a + [zero] * (n - len(a))
    b = b + [zero] * (n - len(b))
    return _ftrim([x + y for x, y in zip(a, b)])


def roots_in(coeffs: Sequence[int], ctx: FieldCtx) -> list[FieldElement]:
    """Roots in ``ctx`` of a squarefree F_p-polynomial that splits completely there.

    Berlekamp's trace splitting with the power basis as the sequence of shifts:
    the trace form is nondegenerate, so the shifts separate every pair of roots
    and no randomness is needed.
    """
    f = _ftrim([ctx.from_int(c) for c in coeffs])
    deltas = [ctx.gen**i for i in range(ctx.m)]
    roots = _split_roots(f, deltas, 0)
    return sorted(roots, key=lambda r: r.index)


def _split_roots(f: list, deltas: list, i: int) -> list:
    deg = len(f) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [-(f[0] / f[1])]
    if i >= len(deltas):
        raise ArithmeticError("polynomial does not split into distinct linear factors")
    ctx = f[0].ctx
    s = _fdivmod([ctx.zero, deltas[i]], f)[1]
    acc = s
    for _ in range(ctx.m - 1):
        s = _fpowmod(s, ctx.p0, f)
        acc = _fadd(acc, s)
    out = []
    for c in range(ctx.p0):
        g = _fgcd(f, _fadd(acc, [ctx.from_int(-c)]) if acc else [ctx.from_int(-c)])
        if len(g) > 1:
            out += _split_roots(g, deltas, i + 1)
    return out


def _eval_coords(coords: Sequence[int], beta: FieldElement) -> FieldElement:
    acc = beta.ctx.zero
    for c in reversed(coords):
        acc = acc * beta + c
    return acc


@functools.lru_cache(maxsize=None)
def _generator_image(p0: int, d: int, m: int) -> tuple:
    """Coordinates in F_{p0^m} of the image of the generator of F_{p0^d}."""
    big = _build_field(p0, m)
    if d == m:
        return big.gen.c
    if d == 1:
        return big.zero.c
    small = _build_field(p0, d)
    checks = []
    for c in divisors(d):
        if 1 < c < d:
            via_small = _generator_image(p0, c, d)
            target = _generator_image(p0, c, m)
            checks.append((via_small, target))
    for beta in roots_in(small.modulus, big):
        if all(_eval_coords(vs, beta).c == t for vs, t in checks):
            return beta.c
    raise AssertionError(f"no compatible embedding GF({p0}^{d}) -> GF({p0}^{m})")


@functools.lru_cache(maxsize=None)
def _embedding(p0: int, d: int, m: int):
    """(matrix m x d, pivot rows, inverse of the pivot block) for F_{p^d} -> F_{p^m}."""
    big = _build_field(p0, m)
    beta = FieldElement(big, _generator_image(p0, d, m))
    cols, cur = [], big.one
    for _ in range(d):
        cols.append(cur.c)
        cur = cur * beta
    E = [[cols[j][i] for j in range(d)] for i in range(m)]
    _, pivots = rref(transpose(E), p0)
    block = [E[r] for r in pivots]
    inv = _invert(block, p0)
    return E, pivots, inv


def _invert(M: list[list[int]], p: int) -> list[list[int]]:
    n = len(M)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(M)]
    R, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise ArithmeticError("singular matrix")
    return [row[n:] for row in R]


def _check_sub(sub: FieldCtx, big: FieldCtx) -> None:
    if sub.p0 != big.p0 or big.m % sub.m:
        raise NotASubfield(f"{sub!r} is not a subfield of {big!r}")


def embed(x: FieldElement, target: FieldCtx) -> FieldElement:
    src = x.ctx
    if src is target:
        return x
    _check_sub(src, target)
    E, _, _ = _embedding(src.p0, src.m, target.m)
    return FieldElement(target, tuple(matvec(E, x.c, src.p0)))


def in_subfield(x: FieldElement, sub: FieldCtx) -> bool:
    _check_sub(sub, x.ctx)
    return frobenius(x, sub.m) == x


def to_subfield(x: FieldElement, sub: FieldCtx) -> FieldElement:
    """Preimage of x under the embedding sub -> x.ctx."""
    big = x.ctx
    if big is sub:
        return x
    _check_sub(sub, big)
    E, pivots, inv = _embedding(sub.p0, sub.m, big.m)
    v = matvec(inv, [x.c[r] for r in pivots], sub.p0)
    if matvec(E, v, sub.p0) != list(x.c):
        raise NotASubfield(f"{x} does not lie in {sub!r}")
    return FieldElement(sub, tuple(v))


def embedding_matrix(sub: FieldCtx, big: FieldCtx) -> list[list[int]]:
    _check_sub(sub, big)
    return _embedding(sub.p0, sub.m, big.m)[0]


def subfield_projection(sub: FieldCtx, big: FieldCtx) -> list[list[int]]:
    """A (sub.m x big.m) matrix inverting the embedding on its image."""
    E, pivots, inv = _embedding(sub.p0, sub.m, big.m)
    P = [[0] * big.m for _ in range(sub.m)]
    for i in range(sub.m):
        for k, r in enumerate(pivots):
            P[i][r] = inv[i][k]
    return P


# ---------------------------------------------------------------------------
# Frobenius, trace, quadratic character, linear solving
# ---------------------------------------------------------------------------

def frobenius(x: FieldElement, k: int = 1) -> FieldElement:
    """x ** (p0 ** k); k is taken modulo the degree, so negative k inverts."""
    k %= x.ctx.m
    if k == 0:
        return x
    return x ** (x.ctx.p0**k)


def trace(x: FieldElement, sub: FieldCtx) -> FieldElement:
    big = x.ctx
    _check_sub(sub, big)
    acc, cur = x, x
    for _ in range(big.m // sub.m - 1):
        cur = frobenius(cur, sub.m)
        acc = acc + cur
    return to_subfield(acc, sub)


def norm(x: FieldElement, sub: FieldCtx) -> FieldElement:
    big = x.ctx
    _check_sub(sub, big)
    acc, cur = x, x
    for _ in range(big.m // sub.m - 1):
        cur = frobenius(cur, sub.m)
        acc = acc * cur
    return to_subfield(acc, sub)


def trace_matrix(big: FieldCtx, sub: FieldCtx) -> list[list[int]]:
    """Matrix of Tr_{big/sub}, landing in the coordinates of ``sub``."""
    _check_sub(sub, big)
    return big.matrix_of(lambda z: trace(z, sub), target=sub)


def quadratic_character(x: FieldElement) -> int:
    ctx = x.ctx
    if ctx.p0 == 2:
        raise EvenCharacteristic("quadratic character needs odd characteristic")
    if x.is_zero():
        return 0
    return 1 if x ** ((ctx.order - 1) // 2) == 1 else -1


@dataclass(frozen=True)
class LinearSolution:
    particular: FieldElement
    kernel: list

    def all(self) -> Iterator[FieldElement]:
        p = self.particular.ctx.p0
        for coeffs in itertools.product(range(p), repeat=len(self.kernel)):
            v = self.particular
            for c, k in zip(coeffs, self.kernel):
                if c:
                    v = v + k * c
            yield v


def linear_solve(L: Sequence[Sequence[int]], rhs: FieldElement) -> LinearSolution | None:
    """Solve L(x) = rhs for an F_p-linear map given by its matrix in the power basis."""
    ctx = rhs.ctx
    v = solve_mod(L, rhs.c, ctx.p0)
    if v is None:
        return None
    kernel = [ctx.element(k) for k in nullspace_mod(L, ctx.p0, ctx.m)]
    return LinearSolution(ctx.element(v), kernel)


def span(vectors: Sequence[FieldElement], ctx: FieldCtx | None = None) -> list[FieldElement]:
    """All F_{p0}-combinations of the given elements, sorted by index."""
    if not vectors:
        return [ctx.zero] if ctx is not None else []
    ctx = vectors[0].ctx
    out = {ctx.zero}
    for v in vectors:
        out = {w + v * c for w in out for c in range(ctx.p0)}
    return sorted(out, key=lambda z: z.index)
