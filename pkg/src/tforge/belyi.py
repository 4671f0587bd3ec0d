"""Belyi maps for the curves C_a by discriminant iteration.

The hyperelliptic double cover is represented only by its branch points.
Polynomial steps move the tracked critical values until all are rational;
the final step t -> prod (t - r_i)^{m_i} sends every rational critical value
to 0 or infinity and infinity to 1.  That last map is never expanded: its
degree is astronomically large, so it is checked through the identity
sum_i m_i prod_{j != i} (t - r_j) == N instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .curves import CurveSpec
from .exact import (
    UPoly,
    discriminant_in_parameter,
    image_polynomial,
    rational_roots,
    squarefree_part,
)

ONE = UPoly((1,))


class LagrangeIdentityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CriticalLocus:
    rationals: frozenset = frozenset()
    irrational_part: UPoly = ONE
    includes_infinity: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rationals", frozenset(Fraction(r) for r in self.rationals))
        irr = self.irrational_part
        if irr.is_zero() or irr.lc != 1:
            raise ValueError("irrational part must be monic")
        if irr.degree >= 1 and squarefree_part(irr).degree != irr.degree:
            raise ValueError("irrational part must be squarefree")

    @property
    def is_rational(self) -> bool:
        return self.irrational_part.degree == 0

    def subset_of_three_points(self) -> bool:
        return self.is_rational and self.rationals <= {Fraction(0), Fraction(1)}

    def to_json(self) -> dict:
        return {
            "rationals": [str(r) for r in sorted(self.rationals)],
            "irrational_part": self.irrational_part.format(),
            "includes_infinity": self.includes_infinity,
        }

    def points(self) -> list[str]:
        out = [str(r) for r in sorted(self.rationals)]
        if self.irrational_part.degree >= 1:
            out.append(f"roots({self.irrational_part})")
        if self.includes_infinity:
            out.append("inf")
        return out


def _split(p: UPoly) -> tuple[set[Fraction], UPoly]:
    """Rational roots and the squarefree rational-root-free cofactor of p."""
    if p.degree < 1:
        return set(), ONE
    roots, rest = rational_roots(squarefree_part(p))
    return roots, rest


def critical_values(p: UPoly) -> CriticalLocus:
    """Finite critical values of a nonconstant polynomial."""
    if p.degree < 1:
        raise ValueError("constant polynomial has no critical locus")
    if p.degree == 1:
        return CriticalLocus()
    rats, irr = _split(discriminant_in_parameter(p))
    return CriticalLocus(frozenset(rats), irr, False)


def push_forward(L: CriticalLocus, q: UPoly) -> CriticalLocus:
    """Critical values of q o f given those (L) of f."""
    if q.degree < 1:
        raise ValueError("constant polynomial step")
    crit = critical_values(q)
    rats = {q(r) for r in L.rationals} | set(crit.rationals)
    irr = crit.irrational_part
    if L.irrational_part.degree >= 1:
        img_rats, img_irr = _split(image_polynomial(L.irrational_part, q))
        rats |= img_rats
        irr = irr * img_irr
    if irr.degree >= 1:
        irr = squarefree_part(irr)
    return CriticalLocus(frozenset(rats), irr, L.includes_infinity)


def rationalize(L: CriticalLocus) -> tuple[list[UPoly], CriticalLocus]:
    """Compose with the irrational part until every critical value is rational."""
    steps = []
    while L.irrational_part.degree >= 1:
        q = L.irrational_part
        nxt = push_forward(L, q)
        if nxt.irrational_part.degree >= q.degree:
            raise AssertionError("irrational degree failed to decrease")
        steps.append(q)
        L = nxt
    return steps, L


@dataclass(frozen=True)
class FactoredMap:
    """t -> scale * prod (t - r_i)^{m_i}.

    With ``affine`` set the map is t -> scale * (t - roots[0]) and ``marked``
    holds the points it was built to send into {0, 1}.
    """

    roots: tuple[Fraction, ...]
    exponents: tuple[int, ...]
    scale: Fraction
    N: int = 1
    affine: bool = False
    marked: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("roots must be pairwise distinct")
        if len(self.roots) != len(self.exponents):
            raise ValueError("one exponent per root")
        if any(m == 0 for m in self.exponents):
            raise ValueError("exponents must be nonzero")

    def image(self, x):
        """Image of a tracked point (a root, or None for infinity)."""
        if self.affine:
            return None if x is None else self.scale * (x - self.roots[0])
        if x is None:
            return Fraction(1)
        for r, m in zip(self.roots, self.exponents):
            if r == x:
                return Fraction(0) if m > 0 else None
        raise ValueError(f"{x} is not a tracked point of this map")

    def to_json(self) -> dict:
        return {
            "roots": [str(r) for r in self.roots],
            "exponents": [str(m) for m in self.exponents],
            "scale": str(self.scale),
            "N": str(self.N),
            "affine": self.affine,
        }


def lagrange_identity_holds(fm: FactoredMap) -> bool:
    """sum_i m_i prod_{j != i} (t - r_j) == N as polynomials."""
    total = UPoly()
    for i, m in enumerate(fm.exponents):
        others = [r for j, r in enumerate(fm.roots) if j != i]
        total = total + UPoly.from_roots(others) * m
    return total == UPoly.const(fm.N)


def three_point_reduce(R) -> FactoredMap:
    """Map sending the finite set R into {0, inf} (or {0, 1}) and inf to 1."""
    pts = [Fraction(r) for r in R]
    if not pts:
        raise ValueError("need at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("repeated points")
    pts.sort()
    if len(pts) == 1:
        return FactoredMap((pts[0],), (1,), Fraction(1), 1, True, tuple(pts))
    if len(pts) == 2:
        r0, r1 = pts
        return FactoredMap((r0,), (1,), 1 / (r1 - r0), 1, True, tuple(pts))
    ys = []
    for i, r in enumerate(pts):
        prod = Fraction(1)
        for j, s in enumerate(pts):
            if j != i:
                prod *= r - s
        ys.append(1 / prod)
    if sum(ys) != 0:
        raise AssertionError("interpolation weights do not sum to zero")
    N = lcm(*(y.denominator for y in ys))
    ms = tuple(int(y * N) for y in ys)
    # sum(m) == 0 and all factors are monic, so g(inf) = 1
    fm = FactoredMap(tuple(pts), ms, Fraction(1), N)
    return fm


@dataclass(frozen=True)
class BelyiChain:
    steps: tuple  # UPoly steps followed by one FactoredMap
    source: object  # CurveSpec or CriticalLocus

    @property
    def factored_map(self) -> FactoredMap | None:
        last = self.steps[-1] if self.steps else None
        return last if isinstance(last, FactoredMap) else None

    def polynomial_steps(self) -> list[UPoly]:
        return [s for s in self.steps if isinstance(s, UPoly)]

    def to_json(self) -> dict:
        fm = self.factored_map
        return {
            "steps": [s.format() for s in self.polynomial_steps()],
            "factored_map": fm.to_json() if fm else None,
        }


def initial_locus(spec: CurveSpec) -> CriticalLocus:
    """Branch points of the double cover z : C_a -> P^1, plus infinity."""
    rats = set(spec.fixed_points())
    if spec.is_rational:
        rats.add(spec.a)
        irr = ONE
    else:
        irr = spec.minpoly.monic()
    return CriticalLocus(frozenset(rats), irr, True)


def belyi_for_curve(spec: CurveSpec) -> BelyiChain:
    L = initial_locus(spec)
    if spec.is_rational:
        steps = [UPoly.z()]
    else:
        steps, L = rationalize(L)
    chain = BelyiChain(tuple(steps) + (three_point_reduce(L.rationals),), spec)
    final = verify_belyi(chain)
    assert final.subset_of_three_points()
    return chain


def verify_belyi(chain: BelyiChain) -> CriticalLocus:
    """Critical locus of the whole composition, computed exactly."""
    src = chain.source
    L = initial_locus(src) if isinstance(src, CurveSpec) else src
    for step in chain.steps:
        if isinstance(step, UPoly):
            L = push_forward(L, step)
            continue
        if not L.is_rational:
            raise ValueError("irrational critical values reach the final step")
        images = set()
        if step.affine:
            tracked = set(step.marked) | {step.roots[0]}
            if not L.rationals <= tracked:
                raise ValueError("critical value not tracked by the final step")
            images = {step.image(r) for r in L.rationals}
            inf = L.includes_infinity
        else:
            if sum(step.exponents) != 0:
                raise LagrangeIdentityError("exponents do not sum to zero")
            if not lagrange_identity_holds(step):
                raise LagrangeIdentityError("Lagrange identity violated")
            if not L.rationals <= set(step.roots):
                raise ValueError("critical value not tracked by the final step")
            # g'/g = N / prod (t - r_i): critical points lie in {r_i, inf},
            # critical values in {0, inf, g(inf) * scale = 1}
            images = {step.image(r) for r in L.rationals}
            images.add(Fraction(1))
            if any(abs(m) >= 2 for m in step.exponents):
                images |= {step.image(r) for r, m in zip(step.roots, step.exponents) if abs(m) >= 2}
            inf = None in images
        rats = frozenset(x for x in images if x is not None)
        L = CriticalLocus(rats, ONE, inf or None in images)
    return L
