from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tforge.curves import (
    INF,
    CurveSpec,
    MobiusMap,
    SingularCurve,
    branch_set,
    curves_equivalent,
    curves_isomorphic,
    make_branch_set,
    maps_onto,
    mobius_equivalences,
    proj,
)


def cross_ratio_map(src, dst):
    """Moebius map sending the three finite points src to dst, via Fractions.

    Built as (T_dst)^-1 o T_src with T the map sending (p, q, r) to (0, inf, 1).
    Only handles finite points, which is all the oracle needs.
    """
    def T(p, q, r):
        # x -> (x - p)(r - q) / ((x - q)(r - p))
        return ((r - q), -p * (r - q), (r - p), -q * (r - p))

    def inv(m):
        a, b, c, d = m
        return (d, -b, -c, a)

    def mul(m, n):
        a, b, c, d = m
        e, f, g, h = n
        return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    return MobiusMap.from_entries(*mul(inv(T(*dst)), T(*src)))


def oracle_equivalences(pts1, pts2):
    """All maps found by searching over every pair of ordered triples."""
    found = set()
    s2 = make_branch_set(pts2)
    s1 = make_branch_set(pts1)
    for src in permutations(pts1, 3):
        for dst in permutations(pts2, 3):
            m = cross_ratio_map([Fraction(x) for x in src], [Fraction(x) for x in dst])
            if maps_onto(m, s1, s2):
                found.add(m)
    return found


def test_branch_set_g3_half():
    b = branch_set(CurveSpec(3, Fraction(1, 2)))
    assert b == make_branch_set([-6, 0, 1, 2, 3, 4, 5, Fraction(1, 2), INF])


def test_branch_set_g6_size():
    b = branch_set(CurveSpec(6, 23))
    assert len(b) == 15
    assert proj(-12) in b.points and proj(23) in b.points


@pytest.mark.parametrize("a", [-6, 0, 5])
def test_singular_parameters(a):
    with pytest.raises(SingularCurve, match="singular curve"):
        CurveSpec(3, a)


def test_identity_is_self_equivalence():
    b = branch_set(CurveSpec(3, Fraction(1, 2)))
    assert MobiusMap.identity() in mobius_equivalences(b, b)


def test_reflection_symmetry_for_a_equal_4g_minus_1():
    for g in (3, 4, 6):
        b = branch_set(CurveSpec(g, 4 * g - 1))
        maps = mobius_equivalences(b, b)
        refl = MobiusMap.from_entries(-1, 2 * g - 1, 0, 1)
        assert refl in maps
        assert all(refl(p) in b.points for p in b.points)


def test_different_parameters_inequivalent_g6():
    b1 = branch_set(CurveSpec(6, 100))
    b2 = branch_set(CurveSpec(6, 101))
    assert mobius_equivalences(b1, b2) == []


def test_size_mismatch_gives_empty():
    assert mobius_equivalences(make_branch_set([0, 1, 2]), make_branch_set([0, 1, 2, 3])) == []


@pytest.mark.parametrize("a,b,expected", [
    (Fraction(7, 3), Fraction(7, 3), True),
    (Fraction(7, 3), Fraction(8, 3), False),
    (23, -25, False),
])
def test_curves_isomorphic_examples(a, b, expected):
    assert curves_isomorphic(6, a, b) is expected


def test_isomorphism_criterion_requires_genus_six():
    with pytest.raises(ValueError, match="g >= 6"):
        curves_isomorphic(5, 19, 19)
    assert curves_equivalent(5, 19, 19)


def test_mobius_group_law():
    m = MobiusMap.from_entries(2, 1, 1, 1)
    n = MobiusMap.from_entries(0, 1, 1, 3)
    assert m.compose(m.inverse()) == MobiusMap.identity()
    for x in (proj(0), proj(Fraction(5, 7)), INF):
        assert m.compose(n)(x) == m(n(x))


@pytest.mark.parametrize("pts1,pts2", [
    ([0, 1, 2, 3], [0, 1, 2, 3]),
    ([0, 1, -1, 2], [0, 1, -1, Fraction(1, 2)]),
    ([0, 1, 3, 9, -2], [0, 1, 3, 9, -2]),
    ([0, 1, 2, 5], [0, 1, 2, 6]),
])
def test_equivalences_match_triple_pair_oracle(pts1, pts2):
    got = set(mobius_equivalences(make_branch_set(pts1), make_branch_set(pts2)))
    assert got == oracle_equivalences(pts1, pts2)


fractions = st.fractions(min_value=-30, max_value=30, max_denominator=12)


@settings(max_examples=30, deadline=None)
@given(fractions)
def test_self_equivalences_form_a_group(a):
    try:
        spec = CurveSpec(3, a)
    except SingularCurve:
        return
    b = branch_set(spec).affine()
    maps = mobius_equivalences(b, b)
    assert MobiusMap.identity() in maps
    for m in maps:
        assert m.inverse() in maps
        assert maps_onto(m, b, b)
