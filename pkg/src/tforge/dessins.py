"""Monodromy of polynomials with two finite critical values, triangle genera,
and normal-closure data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .perm import (
    Perm,
    canonical_form,
    cycle_type,
    generated_order,
    orbit,
    perms_of_cycle_type,
)


@dataclass(frozen=True)
class MonodromyTriple:
    sigma0: Perm
    sigma1: Perm
    sigma_inf: Perm

    def __post_init__(self):
        if not (self.sigma0 * self.sigma1 * self.sigma_inf).is_identity():
            raise ValueError("sigma0*sigma1*sigma_inf is not the identity")
        n = self.degree
        if len(orbit(0, (self.sigma0.img, self.sigma1.img), n)) != n:
            raise ValueError("monodromy is not transitive")

    @classmethod
    def from_pair(cls, sigma0: Perm, sigma1: Perm) -> MonodromyTriple:
        return cls(sigma0, sigma1, (sigma0 * sigma1).inverse())

    @property
    def degree(self) -> int:
        return self.sigma0.degree

    def orders(self) -> tuple[int, int, int]:
        return (self.sigma0.order(), self.sigma1.order(), self.sigma_inf.order())

    def group_order(self) -> int:
        return generated_order([self.sigma0, self.sigma1], self.degree)

    def to_json(self) -> list[str]:
        return [str(self.sigma0), str(self.sigma1), str(self.sigma_inf)]


@dataclass(frozen=True)
class DessinClass:
    representative: MonodromyTriple
    class_size: int
    monodromy_group_order: int
    is_real: bool


@dataclass(frozen=True)
class NormalClosureData:
    monodromy_group_order: int
    stabilizer_index: int
    component_count: int
    genus_of_closure: int


def is_real(t: MonodromyTriple) -> bool:
    """Whether (s0, s1) is simultaneously conjugate in S_d to (s0^-1, s1^-1)."""
    fwd, _ = canonical_form([t.sigma0, t.sigma1])
    back, _ = canonical_form([t.sigma0.inverse(), t.sigma1.inverse()])
    return fwd == back


def _check_partition(n: int, part) -> tuple[int, ...]:
    part = tuple(int(x) for x in part)
    if any(x < 1 for x in part) or sum(part) != n:
        raise ValueError(f"{part} is not a partition of {n}")
    return tuple(sorted(part, reverse=True))


def classify_polynomial_monodromies(n: int, mu, nu) -> list[DessinClass]:
    """Transitive pairs (s0 of type mu, s1 of type nu) with (s0 s1)^-1 an
    n-cycle, up to simultaneous conjugation in S_n."""
    mu = _check_partition(n, mu)
    nu = _check_partition(n, nu)
    if len(mu) + len(nu) != n + 1:
        raise ValueError("type count violates Riemann-Hurwitz for polynomials")
    s0 = _type_representative(n, mu)
    classes: dict[tuple, DessinClass] = {}
    for s1 in perms_of_cycle_type(n, nu):
        prod = s0 * s1
        if prod.order() != n or cycle_type(prod) != (n,):
            continue
        key, aut = canonical_form([s0, s1])
        if key in classes:
            continue
        rep = MonodromyTriple(Perm._raw(key[0]), Perm._raw(key[1]),
                              (Perm._raw(key[0]) * Perm._raw(key[1])).inverse())
        classes[key] = DessinClass(
            representative=rep,
            class_size=factorial(n) // aut,
            monodromy_group_order=rep.group_order(),
            is_real=is_real(rep),
        )
    return [classes[k] for k in sorted(classes)]


def _type_representative(n: int, ctype) -> Perm:
    img = list(range(n))
    start = 0
    for k in ctype:
        for i in range(k):
            img[start + i] = start + (i + 1) % k
        start += k
    return Perm(img)


def triangle_genus(group_order: int, orders) -> int:
    """|G|/2 (1 - 1/r1 - 1/r2 - 1/r3) + 1, exactly."""
    orders = tuple(int(r) for r in orders)
    if any(r < 2 for r in orders):
        raise ValueError("branching orders must be at least 2")
    val = Fraction(group_order, 2) * (1 - sum(Fraction(1, r) for r in orders)) + 1
    if val.denominator != 1 or val < 0:
        raise ValueError("orders do not divide group order consistently")
    return int(val)


def normal_closure_data(t: MonodromyTriple) -> NormalClosureData:
    """Galois closure of the cover with monodromy t, at monodromy level."""
    orders = t.orders()
    if min(orders) < 2:
        raise ValueError("each of sigma0, sigma1, sigma_inf must be nontrivial")
    d = t.degree
    g_order = t.group_order()
    # components of the fiber-product complement correspond to cosets of G in S_d
    comps, rem = divmod(factorial(d), g_order)
    assert rem == 0
    return NormalClosureData(
        monodromy_group_order=g_order,
        stabilizer_index=d,
        component_count=comps,
        genus_of_closure=triangle_genus(g_order, orders),
    )


def degree7_triples() -> dict[str, MonodromyTriple]:
    """The two degree-7 monodromies of type ((2,2,1,1,1), (3,2,2), (7))."""
    raw = {
        "1": ("(1,2)(3,4)", "(1,5,7)(2,3)(4,6)", "(1,7,5,2,4,6,3)"),
        "2": ("(1,2)(3,4)", "(1,7,4)(2,5)(3,6)", "(1,3,6,4,7,2,5)"),
    }
    return {k: MonodromyTriple(*(Perm.parse(x, 7) for x in v)) for k, v in raw.items()}


def class_of(t: MonodromyTriple, classes: list[DessinClass]) -> int | None:
    """Index of the class containing t, if any."""
    key, _ = canonical_form([t.sigma0, t.sigma1])
    for i, c in enumerate(classes):
        r = c.representative
        if canonical_form([r.sigma0, r.sigma1])[0] == key:
            return i
    return None
