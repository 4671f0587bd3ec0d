from itertools import permutations
from math import factorial

import pytest

from tforge import perm
from tforge.dessins import (
    MonodromyTriple,
    class_of,
    classify_polynomial_monodromies,
    is_real,
    normal_closure_data,
    degree7_triples,
    triangle_genus,
)
from tforge.perm import Perm, cycle_type


def brute_classes(n, mu, nu):
    """Passport classes by brute force over S_n x S_n and S_n conjugation."""
    full = tuple(range(n))
    sn = [Perm(p) for p in permutations(full)]
    pairs = set()
    for a in sn:
        if cycle_type(a) != mu:
            continue
        for b in sn:
            if cycle_type(b) != nu or cycle_type(a * b) != (n,):
                continue
            pairs.add((a, b))
    reps = {min(((a.conj(c).img, b.conj(c).img) for c in sn)) for a, b in pairs}
    return pairs, reps


@pytest.mark.parametrize("n,mu,nu", [
    (2, (2,), (1, 1)),
    (3, (2, 1), (2, 1)),
    (4, (2, 1, 1), (3, 1)),
    (4, (2, 2), (2, 1, 1)),
    (5, (2, 2, 1), (3, 1, 1)),
    (5, (3, 1, 1), (2, 2, 1)),
])
def test_classification_matches_brute_force(n, mu, nu):
    got = classify_polynomial_monodromies(n, mu, nu)
    pairs, reps = brute_classes(n, mu, nu)
    assert len(got) == len(reps)
    assert sum(c.class_size for c in got) == len(pairs)
    for c in got:
        t = c.representative
        assert cycle_type(t.sigma0) == mu and cycle_type(t.sigma1) == nu
        assert cycle_type(t.sigma_inf) == (n,)


def test_degree_two_and_three():
    (c,) = classify_polynomial_monodromies(2, (2,), (1, 1))
    assert c.monodromy_group_order == 2
    assert str(c.representative.sigma0) == "(1,2)" and c.representative.sigma1.is_identity()
    (c,) = classify_polynomial_monodromies(3, (2, 1), (2, 1))
    assert c.monodromy_group_order == 6 and c.is_real


def test_riemann_hurwitz_violation():
    with pytest.raises(ValueError, match="Riemann-Hurwitz"):
        classify_polynomial_monodromies(3, (3,), (2, 1))


def test_bad_partition():
    with pytest.raises(ValueError):
        classify_polynomial_monodromies(4, (2, 1), (3, 1))


def test_degree_seven_passport():
    classes = classify_polynomial_monodromies(7, (2, 2, 1, 1, 1), (3, 2, 2))
    assert len(classes) == 2
    assert all(c.monodromy_group_order == 2520 and c.is_real for c in classes)
    assert all(c.class_size == factorial(7) for c in classes)
    t = degree7_triples()
    idx = {class_of(t["1"], classes), class_of(t["2"], classes)}
    assert idx == {0, 1}


def test_degree7_triples_are_valid():
    for t in degree7_triples().values():
        assert t.orders() == (2, 6, 7)
        assert t.group_order() == 2520
        assert is_real(t)


def test_reality_oracle():
    # reality is simultaneous conjugacy of (s0, s1) with (s0^-1, s1^-1)
    for t in degree7_triples().values():
        c = perm.simultaneous_conjugator([t.sigma0, t.sigma1],
                                         [t.sigma0.inverse(), t.sigma1.inverse()])
        assert c is not None
    one = MonodromyTriple(Perm.identity(1), Perm.identity(1), Perm.identity(1))
    assert is_real(one)


def test_complex_conjugate_pair():
    # passport (6; (3,2,1), (2,2,1,1)): one real class and a complex-conjugate pair
    classes = classify_polynomial_monodromies(6, (3, 2, 1), (2, 2, 1, 1))
    assert [c.is_real for c in classes].count(False) == 2
    for c in classes:
        t = c.representative
        brute = perm.simultaneous_conjugator([t.sigma0, t.sigma1],
                                             [t.sigma0.inverse(), t.sigma1.inverse()]) is not None
        assert c.is_real == brute


def test_triple_validation():
    with pytest.raises(ValueError, match="not the identity"):
        MonodromyTriple(Perm.parse("(1,2)", 3), Perm.parse("(2,3)", 3), Perm.identity(3))
    with pytest.raises(ValueError, match="transitive"):
        MonodromyTriple.from_pair(Perm.parse("(1,2)", 4), Perm.parse("(1,2)", 4))


@pytest.mark.parametrize("order,orders,genus", [
    (2520, (2, 6, 7), 241),
    (2520, (5, 5, 5), 505),
    (168, (2, 3, 7), 3),
    (60, (2, 3, 5), 0),
])
def test_triangle_genus(order, orders, genus):
    assert triangle_genus(order, orders) == genus


def test_triangle_genus_nonintegral():
    with pytest.raises(ValueError, match="divide"):
        triangle_genus(7, (2, 3, 7))


def test_normal_closure_of_degree7_triple():
    d = normal_closure_data(degree7_triples()["1"])
    assert (d.monodromy_group_order, d.component_count, d.genus_of_closure) == (2520, 2, 241)
    assert d.stabilizer_index == 7


def test_normal_closure_rejects_trivial_branch():
    t = MonodromyTriple(Perm.parse("(1,2)", 2), Perm.parse("(1,2)", 2), Perm.identity(2))
    with pytest.raises(ValueError):
        normal_closure_data(t)


def test_normal_closure_s3():
    t = MonodromyTriple.from_pair(Perm.parse("(1,2)", 3), Perm.parse("(2,3)", 3))
    d = normal_closure_data(t)
    # the closure of the degree-3 map (2,2,3) is the S3 triangle curve of genus 0
    assert (d.monodromy_group_order, d.component_count, d.genus_of_closure) == (6, 1, 0)
