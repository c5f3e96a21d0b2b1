"""Exact arithmetic in Z[zeta_n] and integer-coefficient polynomials.

A :class:`CyclotomicInteger` stores integer coordinates in the power basis
1, zeta, ..., zeta^(phi(n)-1) of Z[x]/(Phi_n).  The power basis is an integral
basis, so an element is integral exactly when its coordinates are integers;
Newton reconstruction relies on this when it checks integrality at the end.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Sequence, Union

from .errors import NonIntegralCoefficient, NormMismatch, NotRationalInteger, UnsupportedOrder
from .gf import is_prime


def _supported(n: int) -> bool:
    if n in (1, 2, 4, 8):
        return True
    for k in (1, 2, 4):
        if n % k == 0 and is_prime(n // k):
            return True
    return False


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n with integer coefficients, low to high."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(a: list, b: Sequence[int]) -> list:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    assert not any(a), "inexact division"
    return q


def _reduce(coeffs: Sequence, n: int) -> list:
    """Reduce a polynomial in zeta (any length, int or Fraction entries) mod Phi_n."""
    folded = [0] * n
    for k, c in enumerate(coeffs):
        if c:
            folded[k % n] += c
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    for i in range(n - 1, d - 1, -1):
        c = folded[i]
        if c:
            for j in range(d + 1):
                folded[i - d + j] -= c * phi[j]
    return folded[:d]


class CyclotomicRing:
    """Descriptor of Z[zeta_n] = Z[x]/(Phi_n)."""

    def __init__(self, n: int):
        if n < 1 or not _supported(n):
            raise UnsupportedOrder(f"cyclotomic order {n} is not supported")
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.dim = len(self.phi) - 1

    def __repr__(self):
        return f"Z[zeta_{self.n}]"

    def __call__(self, value) -> CyclotomicInteger:
        if isinstance(value, CyclotomicInteger):
            return value
        return CyclotomicInteger(self.n, [value] + [0] * (self.dim - 1))

    def zeta(self, k: int = 1) -> CyclotomicInteger:
        c = [0] * (k % self.n + 1)
        c[k % self.n] = 1
        return CyclotomicInteger(self.n, _reduce(c, self.n))

    def zero(self) -> CyclotomicInteger:
        return self(0)

    def one(self) -> CyclotomicInteger:
        return self(1)


@functools.lru_cache(maxsize=None)
def cyclo_ring(n: int) -> CyclotomicRing:
    return CyclotomicRing(n)


class CyclotomicInteger:
    __slots__ = ("n", "c")

    def __init__(self, n: int, coords: Sequence[int]):
        self.n = n
        self.c = tuple(coords)

    @classmethod
    def from_poly(cls, n: int, coeffs: Sequence[int]) -> CyclotomicInteger:
        """The element sum(coeffs[k] * zeta^k)."""
        cyclo_ring(n)
        return cls(n, _reduce(coeffs, n))

    def _other(self, other):
        if isinstance(other, CyclotomicInteger):
            if other.n != self.n:
                raise TypeError(f"mixed cyclotomic orders {self.n} and {other.n}")
            return other.c
        if isinstance(other, int):
            return (other,) + (0,) * (len(self.c) - 1)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CyclotomicInteger(self.n, [a + b for a, b in zip(self.c, o)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.n, [-a for a in self.c])

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CyclotomicInteger(self.n, [a - b for a, b in zip(self.c, o)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.n, [a * other for a in self.c])
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CyclotomicInteger(self.n, _reduce(_polymul(self.c, o), self.n))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not integral in general")
        result = cyclo_ring(self.n).one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.c == tuple(o)

    def __hash__(self):
        return hash((self.n, self.c))

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" if k == 0 else f"{a}*z^{k}")
        return f"Z[z{self.n}](" + (" + ".join(terms) or "0") + ")"

    def conj(self) -> CyclotomicInteger:
        """Image under zeta -> zeta^-1."""
        n = self.n
        c = [0] * n
        for k, a in enumerate(self.c):
            c[(-k) % n] += a
        return CyclotomicInteger(n, _reduce(c, n))

    def is_integer(self) -> bool:
        return not any(self.c[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise NotRationalInteger(f"{self!r} is not a rational integer")
        return self.c[0]

    def to_json(self) -> dict:
        return {"order": self.n, "coords": list(self.c)}

    def to_complex(self) -> complex:
        """Floating-point value; inexact, for human-readable annotations only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(a * z**k for k, a in enumerate(self.c))


def _polymul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def conj_norm(tau: CyclotomicInteger) -> int:
    """tau * conj(tau) as a rational integer."""
    return (tau * tau.conj()).to_int()


def equals_q(tau: CyclotomicInteger, q: int) -> bool:
    return tau * tau.conj() == q


def is_q_times_root_of_unity(tau: CyclotomicInteger, q: int, m: int) -> bool:
    """Exact test tau^m == q^(m/2) for even m."""
    if m % 2:
        raise ValueError("m must be even")
    return tau**m == q ** (m // 2)


def classify_gaussian(tau: CyclotomicInteger, n: int) -> tuple[str, int]:
    """Locate tau / 2^(n/2) for tau in Z[i] with |tau|^2 = 2^n.

    Returns the class name and j with tau / 2^(n/2) = exp(pi i j / 4), j in 0..7.
    """
    if tau.n != 4:
        raise TypeError("classify_gaussian expects an element of Z[i]")
    if conj_norm(tau) != 2**n:
        raise NormMismatch(f"|tau|^2 != 2^{n}")
    one_plus_i = CyclotomicInteger(4, (1, 1))
    w = one_plus_i**n
    num = tau * w.conj()
    unit = CyclotomicInteger(4, [a // 2**n for a in num.c])
    assert unit * 2**n == num
    k = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}[unit.c]
    j = (2 * k + n) % 8
    return ("primitive-8th-class" if j % 2 else "fourth-root-class"), j


# ---------------------------------------------------------------------------
# Polynomials with integer or cyclotomic-integer coefficients
# ---------------------------------------------------------------------------

Scalar = Union[int, CyclotomicInteger]


class IntPolynomial:
    """Polynomial in T with exact coefficients, low to high; trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar]):
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        out: list = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return IntPolynomial(out)

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def conj(self) -> IntPolynomial:
        return IntPolynomial([c.conj() if isinstance(c, CyclotomicInteger) else c for c in self.coeffs])

    def to_integers(self) -> IntPolynomial:
        """Same polynomial with every coefficient converted to int (asserted rational)."""
        out = []
        for c in self.coeffs:
            if isinstance(c, CyclotomicInteger):
                if not c.is_integer():
                    raise NonIntegralCoefficient(f"coefficient {c!r} is not a rational integer")
                c = c.to_int()
            out.append(c)
        return IntPolynomial(out)

    def as_list(self) -> list:
        return list(self.coeffs)


def linear_factor_product(roots: Sequence[Scalar]) -> IntPolynomial:
    """prod (1 - r T)."""
    poly = IntPolynomial([1])
    for r in roots:
        poly = poly * IntPolynomial([1, -r])
    return poly


def _coords(x, dim: int) -> list:
    if isinstance(x, CyclotomicInteger):
        return list(x.c)
    return [x] + [0] * (dim - 1)


def newton_from_power_sums(S: Sequence[Scalar], d: int) -> IntPolynomial:
    """Coefficients of prod_{i<=d} (1 - alpha_i T) from S_k = sum alpha_i^k, k = 1..d.

    Runs over exact rationals (coordinates in the power basis) and asserts that
    every coefficient is integral.
    """
    if len(S) < d:
        raise ValueError(f"need {d} power sums, got {len(S)}")
    n = next((s.n for s in S if isinstance(s, CyclotomicInteger)), 1)
    dim = cyclo_ring(n).dim
    s = [[Fraction(v) for v in _coords(x, dim)] for x in S[:d]]
    c = [[Fraction(1)] + [Fraction(0)] * (dim - 1)]
    for k in range(1, d + 1):
        acc = [Fraction(0)] * dim
        for i in range(1, k + 1):
            prod = _reduce(_polymul(s[i - 1], c[k - i]), n) if dim > 1 else [s[i - 1][0] * c[k - i][0]]
            acc = [a + b for a, b in zip(acc, prod)]
        c.append([-a / k for a in acc])
    out: list = []
    for k, coords in enumerate(c):
        if any(v.denominator != 1 for v in coords):
            raise NonIntegralCoefficient(f"coefficient of T^{k} is not integral: {coords}")
        ints = [int(v) for v in coords]
        out.append(ints[0] if n == 1 else CyclotomicInteger(n, ints))
    return IntPolynomial(out)


def power_sums(poly: IntPolynomial, count: int) -> list:
    """S_1..S_count of the reciprocal roots of poly = prod (1 - alpha T), poly(0) = 1."""
    c = list(poly.coeffs)
    if c[0] != 1:
        raise ValueError("constant term must be 1")
    S: list = []
    for k in range(1, count + 1):
        acc = (c[k] * k) if k < len(c) else 0
        for i in range(1, k):
            if k - i < len(c):
                acc = acc + S[i - 1] * c[k - i]
        S.append(-acc)
    return S
