"""Exact arithmetic in the cyclotomic field Q(zeta_{2p}).

The generator ``A`` is the class of ``X`` in ``Q[X] / Phi_{2p}(X)``.  Elements
are stored as integer coefficient vectors in the power basis
``A^0, ..., A^{phi(2p)-1}`` over one positive common denominator, always
reduced so that ``gcd(coeffs, den) == 1``.  Equality is tuple equality.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "CycloContext",
    "CycloNum",
    "ContextMismatch",
    "cyclo_context",
    "cyclotomic_polynomial",
    "quantum_int",
    "quantum_factorial",
]

Scalar = Union[int, Fraction]


class ContextMismatch(ValueError):
    """Operands live in different cyclotomic fields."""


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1]
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    assert not any(num), "non-exact cyclotomic division"
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CycloContext:
    """The field Q(A) with A a primitive 2p-th root of unity."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 6 or p % 2:
            raise ValueError(f"level p must be an even integer >= 6, got {p!r}")
        self.p = p
        self.order = 2 * p
        self.modulus = cyclotomic_polynomial(self.order)
        self.degree = len(self.modulus) - 1
        d = self.degree
        # X^k mod Phi for 0 <= k < max(2d, 2p)
        table: list[tuple[int, ...]] = []
        cur = [0] * d
        cur[0] = 1
        for _ in range(max(2 * d, self.order)):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(d):
                    cur[j] -= top * self.modulus[j]
        self._xpow = table
        self._zero = CycloNum._make(self, (0,) * d, 1)
        self._one = CycloNum._make(self, (1,) + (0,) * (d - 1), 1)

    def __repr__(self) -> str:
        return f"CycloContext(p={self.p})"

    def __reduce__(self):
        return (cyclo_context, (self.p,))

    # constructors -----------------------------------------------------

    def zero(self) -> "CycloNum":
        return self._zero

    def one(self) -> "CycloNum":
        return self._one

    def scalar(self, q: Scalar) -> "CycloNum":
        q = Fraction(q)
        coeffs = (q.numerator,) + (0,) * (self.degree - 1)
        return CycloNum._make(self, coeffs, q.denominator)

    def a_power(self, k: int) -> "CycloNum":
        """A**k for any integer k."""
        return CycloNum._make(self, self._xpow[k % self.order], 1)

    @property
    def A(self) -> "CycloNum":
        return self.a_power(1)

    def from_coeffs(self, coeffs: Sequence[Scalar]) -> "CycloNum":
        """Element with the given power-basis coefficients (any length; reduced)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [c.numerator * (den // c.denominator) for c in fr]
        return CycloNum._make(self, self.reduce(ints), den)

    def reduce(self, poly: Sequence[int]) -> tuple[int, ...]:
        """Reduce an integer polynomial in X modulo Phi_{2p}."""
        d = self.degree
        if len(poly) <= d:
            return tuple(poly) + (0,) * (d - len(poly))
        out = list(poly[:d])
        for k in range(d, len(poly)):
            c = poly[k]
            if c:
                row = self._xpow[k % self.order] if k >= len(self._xpow) else self._xpow[k]
                for j in range(d):
                    out[j] += c * row[j]
        return tuple(out)

    def from_json(self, obj: dict) -> "CycloNum":
        return CycloNum.from_json(obj)


@functools.lru_cache(maxsize=None)
def cyclo_context(p: int) -> CycloContext:
    """Shared context for level p."""
    return CycloContext(p)


class CycloNum:
    """Immutable element of Q(zeta_{2p})."""

    __slots__ = ("ctx", "_c", "_den", "_hash")

    ctx: CycloContext

    def __init__(self, ctx: CycloContext, coeffs: Sequence[Scalar]):
        other = ctx.from_coeffs(coeffs)
        self.ctx = ctx
        self._c = other._c
        self._den = other._den
        self._hash = None

    @classmethod
    def _make(cls, ctx: CycloContext, ints: Sequence[int], den: int) -> "CycloNum":
        g = den
        for c in ints:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(ints):
            g = den
        if den < 0:
            g = -g
        obj = object.__new__(cls)
        obj.ctx = ctx
        if g != 1:
            obj._c = tuple(c // g for c in ints)
            obj._den = den // g
        else:
            obj._c = tuple(ints)
            obj._den = den
        obj._hash = None
        return obj

    # inspection -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._c)

    @property
    def p(self) -> int:
        return self.ctx.p

    def is_zero(self) -> bool:
        return not any(self._c)

    def __bool__(self) -> bool:
        return any(self._c)

    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            return self.ctx is other.ctx and self._den == other._den and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.p, self._c, self._den))
        return self._hash

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*A^{k}")
        return "CycloNum(p=%d, %s)" % (self.ctx.p, " + ".join(terms) or "0")

    __str__ = __repr__

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.ctx is not self.ctx:
                raise ContextMismatch(f"p={self.ctx.p} vs p={other.ctx.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.scalar(other)
        raise TypeError(f"cannot combine CycloNum with {type(other).__name__}")

    def __add__(self, other) -> "CycloNum":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self._den == o._den:
            return CycloNum._make(self.ctx, [a + b for a, b in zip(self._c, o._c)], self._den)
        d1, d2 = self._den, o._den
        return CycloNum._make(self.ctx, [a * d2 + b * d1 for a, b in zip(self._c, o._c)], d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum._make(self.ctx, [-a for a in self._c], self._den)

    def __sub__(self, other) -> "CycloNum":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "CycloNum":
        return (-self) + other

    def __mul__(self, other) -> "CycloNum":
        if isinstance(other, int):
            return CycloNum._make(self.ctx, [a * other for a in self._c], self._den)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._c, o._c
        d = len(a)
        raw = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return CycloNum._make(self.ctx, self.ctx.reduce(raw), self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycloNum":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "CycloNum":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CycloNum":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse by the extended Euclidean algorithm over Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.ctx.order)
        a = _trim([Fraction(c) for c in self._c])
        m = [Fraction(c) for c in self.ctx.modulus]
        # invariant: s*a == r0 (mod m)
        r0, r1 = a, m
        s0: list[Fraction] = [Fraction(1)]
        s1: list[Fraction] = []
        while len(r1) > 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant
        c = r0[0]
        inv = [x / c for x in s0]
        return self.ctx.from_coeffs(inv) * self._den

    def conjugate(self) -> "CycloNum":
        """Image under the automorphism A -> A^{-1}."""
        order = self.ctx.order
        raw = [0] * order
        for k, c in enumerate(self._c):
            if c:
                raw[(-k) % order] += c
        return CycloNum._make(self.ctx, self.ctx.reduce(raw), self._den)

    # serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.ctx.p, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "CycloNum":
        ctx = cyclo_context(int(obj["p"]))
        coeffs = [Fraction(s) for s in obj["coeffs"]]
        if len(coeffs) != ctx.degree:
            raise ValueError(f"expected {ctx.degree} coefficients, got {len(coeffs)}")
        return ctx.from_coeffs(coeffs)

    def to_complex(self) -> complex:
        """Debug only: embed with A = exp(i pi / p)."""
        import cmath

        a = cmath.exp(1j * cmath.pi / self.ctx.p)
        return sum(float(c) * a**k for k, c in enumerate(self.coeffs))


# polynomial helpers over Q, lowest degree first, trimmed (no trailing zeros)

def _trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(x) for x in out])


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    r = list(a)
    if len(r) < len(b):
        return [], _trim(r)
    q = [Fraction(0)] * (len(r) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = r[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


# quantum integers -------------------------------------------------------

def quantum_int(ctx: CycloContext, n: int) -> CycloNum:
    """[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2}), as the symmetric sum."""
    if n < 0:
        raise ValueError(f"quantum integer needs n >= 0, got {n}")
    return _qint(ctx.p, n)


@functools.lru_cache(maxsize=None)
def _qint(p: int, n: int) -> CycloNum:
    ctx = cyclo_context(p)
    total = ctx.zero()
    for j in range(n):
        total = total + ctx.a_power(2 * (n - 1) - 4 * j)
    return total


def quantum_factorial(ctx: CycloContext, n: int) -> CycloNum:
    """[n]! = [1][2]...[n]; [0]! = 1."""
    if n < 0:
        raise ValueError(f"quantum factorial needs n >= 0, got {n}")
    return _qfact(ctx.p, n)


@functools.lru_cache(maxsize=None)
def _qfact(p: int, n: int) -> CycloNum:
    ctx = cyclo_context(p)
    if n == 0:
        return ctx.one()
    return _qfact(p, n - 1) * _qint(p, n)


def csum(values: Iterable[CycloNum], ctx: CycloContext) -> CycloNum:
    total = ctx.zero()
    for v in values:
        total = total + v
    return total
