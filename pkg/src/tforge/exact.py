"""Exact rational arithmetic and univariate polynomials over Q.

Rationals are :class:`fractions.Fraction`; everything here is exact.

Resultant sign convention: ``resultant(p, q)`` is the determinant of the
Sylvester matrix with the ``deg q`` shifted rows of ``p`` first, which equals
``lc(p)**deg(q) * prod(q(alpha) for alpha root of p)``.  With this convention
``resultant(z - a, z - b) == b - a``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import sympy

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class UPoly:
    """Immutable univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def z(cls) -> UPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> UPoly:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> UPoly:
        out = cls((1,))
        for r in roots:
            out = out * cls((-as_rational(r), 1))
        return out

    @classmethod
    def parse(cls, text: str) -> UPoly:
        """Parse ``"c0,c1,..."`` (constant term first, integers or ``p/q``)."""
        parts = [s for s in text.replace(" ", "").split(",") if s]
        if not parts:
            raise ValueError(f"empty polynomial string {text!r}")
        return cls(Fraction(s) for s in parts)

    def format(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> UPoly:
        if self.is_zero():
            raise ValueError("zero polynomial")
        lc = self.lc
        return UPoly(c / lc for c in self.coeffs)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UPoly:
        return UPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    # -- ring operations --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UPoly.const(other)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = UPoly((1,)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        lc = other.lc
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lc
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UPoly(quo), UPoly(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("-" if c < 0 else "+", s))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {sign} {s}" for sign, s in terms[1:])


def _coerce(x) -> UPoly:
    return x if isinstance(x, UPoly) else UPoly.const(x)


def poly_compose(p: UPoly, q: UPoly) -> UPoly:
    """Return p(q(t)) by Horner's scheme."""
    out = UPoly()
    for c in reversed(p.coeffs):
        out = out * q + c
    return out


def poly_gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd (zero if both are zero)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def resultant(p: UPoly, q: UPoly) -> Fraction:
    """Sylvester resultant, p-rows first (see module docstring)."""
    if p.is_zero() or q.is_zero():
        raise ValueError("zero polynomial")
    sign_acc = Fraction(1)
    while True:
        m, n = p.degree, q.degree
        if n == 0:
            return sign_acc * q.lc ** m
        if m == 0:
            return sign_acc * p.lc ** n
        r = p % q
        if r.is_zero():
            return Fraction(0)
        # Res(p, q) = (-1)^(mn) lc(q)^(m - deg r) Res(q, r)
        if (m * n) % 2:
            sign_acc = -sign_acc
        sign_acc *= q.lc ** (m - r.degree)
        p, q = q, r


def interpolate(xs, ys) -> UPoly:
    """Exact Lagrange interpolation through (xs[i], ys[i])."""
    xs = [as_rational(x) for x in xs]
    out = UPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        num = UPoly((1,))
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                num = num * UPoly((-xj, 1))
                den *= xi - xj
        out = out + num * (as_rational(yi) / den)
    return out


def discriminant_in_parameter(p: UPoly) -> UPoly:
    """Monic h(y) proportional to Res_z(p(z) - y, p'(z)).

    The roots of h are exactly the finite critical values of p.
    """
    if p.degree < 2:
        raise ValueError("no critical values")
    dp = p.derivative()
    k = dp.degree
    # Res_z(p - y, p') has degree deg p' in y; sample deg p' + 1 points.
    xs = list(range(k + 1))
    ys = [resultant(p - y, dp) for y in xs]
    return interpolate(xs, ys).monic()


def image_polynomial(f: UPoly, q: UPoly) -> UPoly:
    """Monic polynomial whose roots are q(alpha) for the roots alpha of f.

    Computed as Res_z(f(z), y - q(z)) by sampling in y and interpolating;
    multiplicities follow those of f.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return UPoly((1,))
    xs = list(range(f.degree + 1))
    ys = [resultant(f, UPoly.const(y) - q) for y in xs]
    return interpolate(xs, ys).monic()


def squarefree_part(p: UPoly) -> UPoly:
    """Monic p / gcd(p, p')."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return UPoly((1,))
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def primitive_integer_coeffs(p: UPoly) -> list[int]:
    """Integer coefficients of a primitive polynomial proportional to p."""
    den = reduce(lcm, (c.denominator for c in p.coeffs), 1)
    ints = [int(c * den) for c in p.coeffs]
    g = reduce(gcd, ints, 0)
    return [c // g for c in ints]


def rational_roots(p: UPoly) -> tuple[set[Fraction], UPoly]:
    """Rational roots of p and the monic cofactor free of rational roots.

    Candidates come from the rational root theorem applied to the
    content-normalized integer coefficients; each root is divided out with
    its full multiplicity.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    roots: set[Fraction] = set()
    rest = p.monic()
    while rest.degree >= 1 and rest.coeffs[0] == 0:
        roots.add(Fraction(0))
        rest = UPoly(rest.coeffs[1:])
    if rest.degree >= 1:
        ints = primitive_integer_coeffs(rest)
        nums = sympy.divisors(abs(ints[0]))
        dens = sympy.divisors(abs(ints[-1]))
        for d in dens:
            for n in nums:
                if gcd(n, d) != 1:
                    continue
                for cand in (Fraction(n, d), Fraction(-n, d)):
                    if rest.degree < 1:
                        break
                    lin = UPoly((-cand, 1))
                    quo, rem = divmod(rest, lin)
                    if rem.is_zero():
                        roots.add(cand)
                        rest = quo
                        while True:
                            quo, rem = divmod(rest, lin)
                            if not rem.is_zero():
                                break
                            rest = quo
    return roots, rest.monic()
