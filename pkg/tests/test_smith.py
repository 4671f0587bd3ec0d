import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from tforge.smith import AbelianInvariants, dense_smith_diagonal, sparse_invariants


def sympy_invariants(mat, ncols):
    """Invariants of Z^ncols / row lattice via sympy's invariant factors."""
    rows = [r for r in mat if any(r)]
    if not rows:
        return AbelianInvariants(ncols, ())
    facs = [abs(int(x)) for x in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [f for f in facs if f]
    return AbelianInvariants(ncols - len(nonzero), tuple(f for f in nonzero if f > 1))


def to_rows(mat):
    return [{j: v for j, v in enumerate(r) if v} for r in mat]


def dense_invariants(mat, ncols):
    diag = dense_smith_diagonal(mat)
    return AbelianInvariants(ncols - len(diag), tuple(d for d in diag if d > 1))


@pytest.mark.parametrize("mat,ncols,expected", [
    ([[2, 0], [0, 3]], 2, AbelianInvariants(0, (6,))),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3, AbelianInvariants(0, (2, 6, 12))),
    ([[0, 0]], 2, AbelianInvariants(2, ())),
    ([[2, -1], [0, 3]], 2, AbelianInvariants(0, (6,))),
    ([[4]], 3, AbelianInvariants(2, (4,))),
])
def test_known_examples(mat, ncols, expected):
    assert sparse_invariants(to_rows(mat), ncols) == expected
    assert dense_invariants(mat, ncols) == expected


def test_invariants_validation():
    with pytest.raises(ValueError):
        AbelianInvariants(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianInvariants(0, (1,))
    assert str(AbelianInvariants(2, (5, 30))) == "Z/5 + Z/30 + Z^2"
    assert str(AbelianInvariants(0, ())) == "0"


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_sparse_dense_and_sympy_agree(mat):
    n = len(mat[0])
    expected = sympy_invariants(mat, n)
    assert dense_invariants(mat, n) == expected
    assert sparse_invariants(to_rows(mat), n) == expected


def test_large_sparse_relation_matrix():
    # block structure: a long chain of unit pivots that collapses to Z/6 + Z
    rng = random.Random(3)
    n = 300
    rows = [{i: 1, i + 1: -1} for i in range(n - 2)]
    rows.append({n - 2: 6})
    # shuffle in redundant combinations
    for _ in range(50):
        a, b = rng.sample(range(len(rows)), 2)
        combo = dict(rows[a])
        for k, v in rows[b].items():
            combo[k] = combo.get(k, 0) + 2 * v
        rows.append({k: v for k, v in combo.items() if v})
    rng.shuffle(rows)
    got = sparse_invariants(rows, n)
    assert got == AbelianInvariants(1, (6,))
