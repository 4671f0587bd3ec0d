from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tforge.exact import (
    UPoly,
    discriminant_in_parameter,
    image_polynomial,
    interpolate,
    poly_compose,
    poly_gcd,
    rational_roots,
    resultant,
    squarefree_part,
)

Z = UPoly.z()


def P(text):
    return UPoly.parse(text)


def det(mat):
    """Determinant by Fraction Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in mat]
    n = len(a)
    sign, d = 1, Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            sign = -sign
        d *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            for c in range(i, n):
                a[r][c] -= f * a[i][c]
    return sign * d


def sylvester_resultant(p: UPoly, q: UPoly):
    m, n = p.degree, q.degree
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return det(rows)


def test_parse_and_format_roundtrip():
    p = P("-2,0,1")
    assert p == Z * Z - 2
    assert P(p.format()) == p
    assert P("1/2,-3/4").coeffs == (Fraction(1, 2), Fraction(-3, 4))


@pytest.mark.parametrize("p,q,expected", [
    ("0,0,1", "1,1", "1,2,1"),
    ("0,1", "3,0,5", "3,0,5"),
    ("-2,0,1", "-2,0,1", "2,0,-4,0,1"),
])
def test_compose_examples(p, q, expected):
    assert poly_compose(P(p), P(q)) == P(expected)


@pytest.mark.parametrize("p,q,expected", [
    ("-1,1", "-2,1", -1),
    ("-1,0,1", "-1,1", 0),
    ("1,0,1", "-1,0,1", 4),
])
def test_resultant_examples(p, q, expected):
    assert resultant(P(p), P(q)) == expected
    assert sylvester_resultant(P(p), P(q)) == expected


def test_resultant_of_linear_factors_convention():
    # Res(p, q) = lc(p)^deg(q) * prod q(alpha) over roots alpha of p
    assert resultant(Z - 3, Z - 10) == -7


def test_resultant_zero_polynomial():
    with pytest.raises(ValueError, match="zero polynomial"):
        resultant(UPoly(), Z)


small = st.integers(-6, 6)


def poly_strategy(min_deg=1, max_deg=4):
    return st.lists(small, min_size=min_deg + 1, max_size=max_deg + 1).filter(
        lambda c: c[-1] != 0).map(UPoly)


@settings(max_examples=60, deadline=None)
@given(poly_strategy(), poly_strategy())
def test_resultant_matches_sylvester(p, q):
    assert resultant(p, q) == sylvester_resultant(p, q)


@settings(max_examples=40, deadline=None)
@given(poly_strategy(), poly_strategy())
def test_resultant_antisymmetry(p, q):
    assert resultant(q, p) == (-1) ** (p.degree * q.degree) * resultant(p, q)


@settings(max_examples=40, deadline=None)
@given(poly_strategy(), poly_strategy())
def test_divmod_identity(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


def test_interpolation_recovers_polynomial():
    p = P("1/3,-2,0,5")
    xs = [0, 1, 2, 3]
    assert interpolate(xs, [p(x) for x in xs]) == p


@pytest.mark.parametrize("p,expected", [
    ("0,0,1", "0,1"),
    ("-2,0,1", "2,1"),
    ("0,-3,0,1", "-4,0,1"),
])
def test_discriminant_in_parameter(p, expected):
    assert discriminant_in_parameter(P(p)) == P(expected)


def test_discriminant_needs_degree_two():
    with pytest.raises(ValueError, match="no critical values"):
        discriminant_in_parameter(Z + 1)


def test_discriminant_matches_critical_values_numerically():
    p = P("0,-2,0,1")  # z^3 - 2z
    d = discriminant_in_parameter(p)
    assert d == P("-32/27,0,1")


@pytest.mark.parametrize("p,expected", [
    ("1,-2,1", "-1,1"),
    ("-2,0,1", "-2,0,1"),
    ("0,0,0,-1,1", "0,-1,1"),
])
def test_squarefree_part(p, expected):
    assert squarefree_part(P(p)) == P(expected)


def test_squarefree_zero_raises():
    with pytest.raises(ValueError):
        squarefree_part(UPoly())


@pytest.mark.parametrize("p,roots,cofactor", [
    ("-1,0,1", {1, -1}, "1"),
    ("-2,0,1", set(), "-2,0,1"),
    ("2,-4,-1,2", {Fraction(1, 2)}, "-2,0,1"),
])
def test_rational_roots(p, roots, cofactor):
    rs, rest = rational_roots(P(p))
    assert rs == roots
    assert rest == P(cofactor)


def test_rational_roots_removes_multiplicity():
    p = (Z - 1) ** 3 * (Z * Z + 1)
    rs, rest = rational_roots(p)
    assert rs == {1}
    assert rest == Z * Z + 1


def test_image_polynomial_of_sqrt2_under_square():
    # roots +-sqrt2 of z^2-2 map to 2 under z^2
    assert image_polynomial(P("-2,0,1"), Z * Z) == (Z - 2) ** 2


def test_gcd_is_monic():
    g = poly_gcd((Z - 1) * (Z + 2) * 3, (Z - 1) * (Z - 5))
    assert g == Z - 1
