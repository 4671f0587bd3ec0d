"""Very special hyperelliptic curves and Moebius equivalence of branch sets.

The curve ``C_a`` of genus ``g`` is ``w^2 = (z - a)(z + 2g) prod_{i<2g} (z - i)``.
Its branch set is handled as a finite set of points of P^1(Q); infinity is
carried along as a marked point so projective maps can be tested uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd

from .exact import UPoly, as_rational

INF = (1, 0)


class SingularCurve(ValueError):
    pass


def proj(x) -> tuple[int, int]:
    """Normalized homogeneous coordinates of a point of P^1(Q)."""
    if x is None or x == "inf" or x == INF:
        return INF
    if isinstance(x, tuple):
        a, b = x
        if b == 0:
            return INF
        x = Fraction(a, b)
    x = as_rational(x)
    return (x.numerator, x.denominator)


def point_str(pt) -> str:
    a, b = pt
    if b == 0:
        return "inf"
    return str(Fraction(a, b))


@dataclass(frozen=True)
class CurveSpec:
    """Genus and parameter of C_a.

    ``a`` is a rational, or ``None`` when the parameter is irrational and
    given by its monic minimal polynomial ``minpoly`` plus a ``root_label``.
    """

    genus: int
    a: Fraction | None = None
    minpoly: UPoly | None = None
    root_label: int = 0

    def __post_init__(self):
        if self.genus < 3:
            raise ValueError("genus must be at least 3")
        if self.a is None:
            if self.minpoly is None:
                raise ValueError("need either a rational parameter or a minimal polynomial")
            if self.minpoly.degree < 1:
                raise ValueError("minimal polynomial must be nonconstant")
            if self.minpoly.degree == 1:
                object.__setattr__(self, "a", -self.minpoly.monic().coeffs[0])
                object.__setattr__(self, "minpoly", None)
            else:
                object.__setattr__(self, "minpoly", self.minpoly.monic())
        else:
            object.__setattr__(self, "a", as_rational(self.a))
        if self.a is not None and self.a in self.fixed_points():
            raise SingularCurve("singular curve")

    def fixed_points(self) -> list[Fraction]:
        g = self.genus
        return [Fraction(-2 * g)] + [Fraction(i) for i in range(2 * g)]

    @property
    def is_rational(self) -> bool:
        return self.a is not None

    def same_parameter(self, other: CurveSpec) -> bool:
        # for irrational parameters: same minimal polynomial and same root label
        if self.is_rational != other.is_rational:
            return False
        if self.is_rational:
            return self.a == other.a
        return self.minpoly == other.minpoly and self.root_label == other.root_label


@dataclass(frozen=True)
class BranchSet:
    points: frozenset

    def __len__(self):
        return len(self.points)

    def affine(self) -> BranchSet:
        return BranchSet(frozenset(p for p in self.points if p != INF))

    def sorted(self) -> list[tuple[int, int]]:
        return sorted(self.points, key=lambda p: (p[1] == 0, Fraction(p[0], p[1] or 1)))

    def to_json(self) -> list[str]:
        return [point_str(p) for p in self.sorted()]


def make_branch_set(points) -> BranchSet:
    pts = [proj(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("branch points must be pairwise distinct")
    return BranchSet(frozenset(pts))


def branch_set(spec: CurveSpec) -> BranchSet:
    """{-2g, 0, 1, ..., 2g-1, a, inf} for a rational parameter a."""
    if not spec.is_rational:
        raise ValueError("branch_set needs a rational parameter")
    return make_branch_set(spec.fixed_points() + [spec.a, INF])


@dataclass(frozen=True)
class MobiusMap:
    """x -> (a x + b) / (c x + d), stored content-normalized over Z."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_entries(cls, a, b, c, d) -> MobiusMap:
        ents = [as_rational(x) for x in (a, b, c, d)]
        if ents[0] * ents[3] - ents[1] * ents[2] == 0:
            raise ValueError("singular Moebius matrix")
        den = 1
        for e in ents:
            den = den * e.denominator // gcd(den, e.denominator)
        ints = [int(e * den) for e in ents]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        first = next(v for v in ints if v != 0)
        if first < 0:
            ints = [-v for v in ints]
        return cls(*ints)

    @classmethod
    def identity(cls) -> MobiusMap:
        return cls(1, 0, 0, 1)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    def matrix(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __call__(self, pt):
        x, y = pt
        u, v = self.a * x + self.b * y, self.c * x + self.d * y
        if v == 0:
            return INF
        f = Fraction(u, v)
        return (f.numerator, f.denominator)

    def compose(self, other: MobiusMap) -> MobiusMap:
        """self after other."""
        return MobiusMap.from_entries(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> MobiusMap:
        return MobiusMap.from_entries(self.d, -self.b, -self.c, self.a)


def _three_point_matrix(p1, p2, p3):
    """Matrix sending p1, p2, p3 to 0, inf, 1 (as a 2x2 integer matrix)."""
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    # rows are linear forms vanishing at p1 resp. p2: l(x, y) = y_i x - x_i y
    r1 = (y1, -x1)
    r2 = (y2, -x2)
    s1 = r1[0] * x3 + r1[1] * y3
    s2 = r2[0] * x3 + r2[1] * y3
    return (r1[0] * s2, r1[1] * s2, r2[0] * s1, r2[1] * s1)


def _mat_inv(m):
    a, b, c, d = m
    return (d, -b, -c, a)


def _mat_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _apply(m, pt):
    a, b, c, d = m
    x, y = pt
    u, v = a * x + b * y, c * x + d * y
    if v == 0:
        return INF
    g = gcd(u, v)
    if v < 0:
        g = -g
    return (u // g, v // g)


def maps_onto(m: MobiusMap, src: BranchSet, dst: BranchSet) -> bool:
    return {m(p) for p in src.points} == set(dst.points)


def mobius_equivalences(b1: BranchSet, b2: BranchSet) -> list[MobiusMap]:
    """All Moebius maps over Q carrying b1 bijectively onto b2.

    Brute force: fix one ordered triple of b1, try every ordered triple of
    b2 as its image (an equivalence is determined by the images of three
    points, so fixing the source triple loses nothing).
    """
    if len(b1) != len(b2) or len(b1) < 3:
        return []
    pts1 = b1.sorted()
    src, rest = pts1[:3], pts1[3:]
    to_std = _three_point_matrix(*src)
    dst = b2.points
    found = set()
    for tgt in permutations(b2.sorted(), 3):
        m = _mat_mul(_mat_inv(_three_point_matrix(*tgt)), to_std)
        if all(_apply(m, p) in dst for p in rest):
            found.add(MobiusMap.from_entries(*m))
    return sorted(found, key=lambda m: (m.a, m.b, m.c, m.d))


def equivalences_report(g: int, a, b) -> dict:
    """Equivalences of the two branch sets, with and without infinity."""
    s1, s2 = CurveSpec(g, as_rational(a)), CurveSpec(g, as_rational(b))
    full1, full2 = branch_set(s1), branch_set(s2)
    with_inf = mobius_equivalences(full1, full2)
    affine = mobius_equivalences(full1.affine(), full2.affine())
    return {"with_infinity": with_inf, "affine": affine}


def curves_equivalent(g: int, a, b) -> bool:
    """Projective equivalence of the 2g+2 affine branch points, any g >= 3."""
    return bool(equivalences_report(g, a, b)["affine"])


def curves_isomorphic(g: int, a, b) -> bool:
    """Isomorphism test for C_a, C_b; the iff with a == b is known for g >= 6."""
    if g < 6:
        raise ValueError("criterion proven only for g >= 6")
    return curves_equivalent(g, a, b)
