"""Unmixed Beauville structures: freeness of the diagonal action, invariants, search."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .dessins import triangle_genus
from .perm import (
    PermGroup,
    SphericalTriple,
    _inv,
    _mul,
    _order,
    enumerate_spherical,
)


@dataclass(frozen=True)
class UnmixedStructure:
    group: PermGroup
    triple1: SphericalTriple
    triple2: SphericalTriple

    def check(self) -> None:
        order = self.group.order()
        for t in (self.triple1, self.triple2):
            if any(a not in self.group for a in t.as_tuple()):
                raise ValueError("triple not contained in the group")
            if t.generated_order() != order:
                raise ValueError("markings do not generate")


@dataclass(frozen=True)
class SurfaceInvariants:
    g1: int
    g2: int
    euler_e: int
    chi: int
    K2: int

    def to_json(self) -> dict:
        return {"genera": [self.g1, self.g2], "e": self.euler_e,
                "chi": self.chi, "K2": self.K2}


def _class_of(x: tuple, G: PermGroup) -> set[tuple]:
    gens = [g.img for g in G.generators]
    pairs = [(_inv(g), g) for g in gens]
    cls = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for gi, g in pairs:
            z = _mul(_mul(gi, y), g)
            if z not in cls:
                cls.add(z)
                stack.append(z)
    return cls


def sigma_set(t: SphericalTriple, G: PermGroup) -> frozenset:
    """All conjugates of all powers of the triple entries (raw tuples).

    These are exactly the elements with a fixed point on the triangle curve
    of ``t``.
    """
    out: set[tuple] = set()
    for a in t.raw():
        k = _order(a)
        p = a
        for _ in range(k):
            if p not in out:
                out |= _class_of(p, G)
            p = _mul(p, a)
    out.add(tuple(range(G.degree)))
    return frozenset(out)


def is_unmixed_beauville(s: UnmixedStructure) -> bool:
    order = s.group.order()
    if s.triple1.generated_order() != order or s.triple2.generated_order() != order:
        return False
    common = sigma_set(s.triple1, s.group) & sigma_set(s.triple2, s.group)
    return len(common) == 1


def diagonal_action_free_bruteforce(s: UnmixedStructure) -> bool:
    """Independent check: no nontrivial element fixes a point of both curves.

    Point stabilizers on the triangle curve of (a1, a2, a3) are the conjugates
    g <a_i> g^-1; compare every pair of such cyclic subgroups directly.
    """
    elems = s.group.raw_elements()

    def stabilizers(t):
        subs = set()
        for a in t.raw():
            cyc = []
            p = a
            for _ in range(_order(a)):
                cyc.append(p)
                p = _mul(p, a)
            for g in elems:
                gi = _inv(g)
                subs.add(frozenset(_mul(_mul(g, c), gi) for c in cyc))
        return subs

    ident = tuple(range(s.group.degree))
    for h1 in stabilizers(s.triple1):
        for h2 in stabilizers(s.triple2):
            if (h1 & h2) - {ident}:
                return False
    return True


def surface_invariants(s: UnmixedStructure) -> SurfaceInvariants:
    if not is_unmixed_beauville(s):
        raise ValueError("action not free")
    order = s.group.order()
    g1 = triangle_genus(order, s.triple1.orders())
    g2 = triangle_genus(order, s.triple2.orders())
    num = (2 - 2 * g1) * (2 - 2 * g2)
    if num % order:
        raise ValueError("Euler number of the quotient is not integral")
    e = num // order
    if e % 4:
        raise ValueError("holomorphic Euler characteristic is not integral")
    chi = e // 4
    K2 = 8 * chi
    assert 12 * chi == K2 + e
    return SurfaceInvariants(g1, g2, e, chi, K2)


def element_orders(G: PermGroup) -> list[int]:
    return sorted({_order(e) for e in G.raw_elements()})


def search_beauville(G: PermGroup, signature_bound: int | None = None,
                     signatures=None) -> list[UnmixedStructure]:
    """All unordered pairs of triple classes with disjoint sigma sets.

    Signatures default to every multiset of three element orders >= 2 (each
    at most ``signature_bound`` when given).
    """
    if G.order() > 10 ** 4:
        raise ValueError("group too large for exhaustive search")
    if signatures is None:
        orders = [k for k in element_orders(G) if k >= 2]
        if signature_bound is not None:
            orders = [k for k in orders if k <= signature_bound]
        signatures = list(combinations_with_replacement(orders, 3))
    triples = []
    for sig in signatures:
        triples.extend(enumerate_spherical(G, sig))
    sigmas = [sigma_set(t, G) for t in triples]
    out = []
    for i in range(len(triples)):
        for j in range(i, len(triples)):
            if len(sigmas[i] & sigmas[j]) == 1:
                out.append(UnmixedStructure(G, triples[i], triples[j]))
    return out
