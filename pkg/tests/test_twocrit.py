import numpy as np
import pytest
import sympy

from tforge.twocrit import (
    NumericSolution,
    _FactorCoordinates,
    build_system,
    critical_value_error,
    quotient_by_unity,
    solve_numeric,
    unity_orbit,
)


def test_degree_two_system():
    sys = build_system(2, (2,), (1, 1))
    b1, = sys.beta
    g1, g2 = sys.gamma
    eqs = {sympy.expand(e) for e in sys.equations}
    assert sympy.expand(2 * b1) in eqs
    assert sympy.expand(g1 + g2) in eqs
    # constant coefficient: b1^2 = 1 + g1 g2, linear: -2 b1 = -(g1 + g2)
    sol = {b1: 0, g1: 1, g2: -1}
    assert all(sympy.expand(e.subs(sol)) == 0 for e in sys.equations)
    assert any(sympy.expand(e.subs({b1: 0, g1: 2, g2: -2})) != 0 for e in sys.equations)


def test_degree7_system_shape():
    sys = build_system(7, (2, 2, 1, 1, 1), (3, 2, 2))
    assert len(sys.equations) == 8
    assert len(sys.variables) == 8


def test_riemann_hurwitz_check():
    with pytest.raises(ValueError, match="Riemann-Hurwitz"):
        build_system(3, (3,), (2, 1))
    with pytest.raises(ValueError):
        build_system(3, (2,), (2, 1))


def test_degree_two_solution_is_z_squared():
    sys = build_system(2, (2,), (1, 1))
    sols = solve_numeric(sys, attempts=16, seed=1)
    assert len(sols) == 1
    s = sols[0]
    assert abs(s.beta[0]) < 1e-12
    assert sorted(abs(s.gamma)) == pytest.approx([1, 1])
    assert np.allclose(s.poly_coefficients(), [0, 0, 1])


def test_cubic_chebyshev_like():
    sys = build_system(3, (2, 1), (2, 1))
    sols = solve_numeric(sys, attempts=64, seed=2)
    real = [s for s in sols if s.is_real]
    assert real
    s = real[0]
    assert s.residual < 1e-10 and s.critical_value_error < 1e-10
    # (T_3(w) + 1)/2 with w = 2^(-1/3) z, made monic
    a = 2 ** (-1 / 3)
    assert np.allclose(s.poly_coefficients(), [0.5, -1.5 * a, 0, 1])
    assert len(quotient_by_unity(sols)) == 1


def test_factor_jacobian_matches_finite_differences():
    fc = _FactorCoordinates(7, (2, 2, 1, 1, 1), (3, 2, 2))
    rng = np.random.default_rng(0)
    x = rng.standard_normal(fc.dim) + 1j * rng.standard_normal(fc.dim)
    J = fc.J(x)
    h = 1e-7
    for j in range(fc.dim):
        e = np.zeros(fc.dim, complex)
        e[j] = h
        fd = (fc.F(x + e) - fc.F(x - e)) / (2 * h)
        assert np.allclose(J[:, j], fd, atol=1e-5)


def test_solutions_satisfy_exact_system():
    sys = build_system(4, (2, 1, 1), (3, 1))
    sols = solve_numeric(sys, attempts=64, seed=3)
    assert sols
    for s in sols:
        subs = dict(zip(sys.variables, list(s.beta) + list(s.gamma)))
        vals = [complex(sympy.N(e.subs(subs))) for e in sys.equations]
        assert max(abs(v) for v in vals) < 1e-9


def test_seeded_runs_are_deterministic():
    sys = build_system(4, (2, 1, 1), (3, 1))
    a = solve_numeric(sys, attempts=24, seed=9)
    b = solve_numeric(sys, attempts=24, seed=9)
    assert [s.to_json() for s in a] == [s.to_json() for s in b]


def test_unity_orbit_of_z_squared():
    s = NumericSolution(np.array([0j]), np.array([1, -1], complex), 0.0, True, np.array([0j]))
    assert len(unity_orbit(s)) == 1


def test_unity_orbit_size_divides_prime_degree():
    sys = build_system(5, (2, 1, 1, 1), (3, 2))
    sols = solve_numeric(sys, attempts=32, seed=4)
    assert sols
    for s in sols:
        assert len(unity_orbit(s)) in (1, 5)


def test_critical_value_error():
    assert critical_value_error(np.array([0, 0, 1.0])) == 0
    assert critical_value_error(np.array([0.25, 0, 1.0])) == pytest.approx(0.25)


def test_bad_tolerance():
    with pytest.raises(ValueError):
        solve_numeric(build_system(2, (2,), (1, 1)), tol=0)
