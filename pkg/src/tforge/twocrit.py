"""Normalized polynomials with critical values {0, 1}.

P(z) = prod (z - beta_i)^{m_i} = 1 + prod (z - gamma_k)^{n_k}, with P monic
and the z^{n-1} coefficient zero.  ``build_system`` writes the n + 1 integer
equations exactly (sympy); ``solve_numeric`` finds points by damped Newton
from random starts and checks them against those equations.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import sympy

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
DEFAULT_ATTEMPTS = 512
CLUSTER_TOL = 1e-8


@dataclass
class CritSystem:
    n: int
    mu: tuple[int, ...]
    nu: tuple[int, ...]
    beta: tuple[sympy.Symbol, ...]
    gamma: tuple[sympy.Symbol, ...]
    equations: tuple[sympy.Expr, ...]
    _funcs: tuple = field(default=None, repr=False)

    @property
    def variables(self):
        return self.beta + self.gamma

    def compiled(self):
        if self._funcs is None:
            vs = self.variables
            F = sympy.Matrix(self.equations)
            J = F.jacobian(vs)
            self._funcs = (sympy.lambdify(vs, F, "numpy"), sympy.lambdify(vs, J, "numpy"))
        return self._funcs

    def residual(self, x) -> float:
        f, _ = self.compiled()
        return float(np.max(np.abs(np.asarray(f(*x), dtype=complex))))


def build_system(n: int, mu, nu) -> CritSystem:
    mu = tuple(int(m) for m in mu)
    nu = tuple(int(k) for k in nu)
    if sum(mu) != n or sum(nu) != n:
        raise ValueError("mu and nu must be partitions of n")
    if len(mu) + len(nu) != n + 1:
        raise ValueError("type count violates Riemann-Hurwitz for polynomials")
    z = sympy.Symbol("z")
    beta = sympy.symbols(f"beta1:{len(mu) + 1}")
    gamma = sympy.symbols(f"gamma1:{len(nu) + 1}")
    p0 = sympy.Mul(*[(z - b) ** m for b, m in zip(beta, mu)])
    p1 = 1 + sympy.Mul(*[(z - c) ** k for c, k in zip(gamma, nu)])
    diff = sympy.Poly(sympy.expand(p0 - p1), z)
    eqs = [sum(m * b for b, m in zip(beta, mu)), sum(k * c for c, k in zip(gamma, nu))]
    eqs += [diff.coeff_monomial(z ** j) for j in range(n - 1)]
    return CritSystem(n, mu, nu, tuple(beta), tuple(gamma), tuple(sympy.expand(e) for e in eqs))


@dataclass
class NumericSolution:
    beta: np.ndarray
    gamma: np.ndarray
    residual: float
    is_real: bool
    normalized_coefficients: np.ndarray  # a_0 .. a_{n-2}
    critical_value_error: float = 0.0

    def poly_coefficients(self) -> np.ndarray:
        """All coefficients of P, lowest degree first."""
        return np.concatenate([self.normalized_coefficients, [0.0, 1.0]])

    def to_json(self) -> dict:
        def cx(v):
            return [[float(x.real), float(x.imag)] for x in v]
        return {
            "beta": cx(self.beta),
            "gamma": cx(self.gamma),
            "coefficients": cx(self.normalized_coefficients),
            "residual": self.residual,
            "critical_value_error": self.critical_value_error,
            "is_real": self.is_real,
        }


def _poly_from_roots(roots, mults) -> np.ndarray:
    """Coefficients lowest degree first of prod (z - r)^m."""
    c = np.array([1.0 + 0j])
    for r, m in zip(roots, mults):
        for _ in range(m):
            c = np.convolve(c, np.array([-r, 1.0]))
    return c


def critical_value_error(coeffs: np.ndarray) -> float:
    """max over critical points c of dist(P(c), {0, 1})."""
    P = np.polynomial.Polynomial(coeffs)
    crit = P.deriv().roots()
    vals = P(crit)
    return float(np.max(np.minimum(np.abs(vals), np.abs(vals - 1)))) if len(vals) else 0.0


class _FactorCoordinates:
    """The same system in coefficients of grouped factors.

    Roots sharing a multiplicity m are collected into one monic factor Q_m,
    so P = prod Q_m^m and P - 1 = prod R_k^k.  Unknowns are the non-leading
    coefficients of the Q's and R's (r + s of them); equations are the
    coefficients of z^0..z^{n-1} of P - 1 - prod R_k^k plus the vanishing
    z^{n-1} coefficient of P.  Unlike root coordinates this chart has no
    singularity where roots of equal multiplicity collide.
    """

    def __init__(self, n: int, mu, nu):
        self.n = n
        self.g0 = sorted(Counter(mu).items())
        self.g1 = sorted(Counter(nu).items())
        self.sizes = [c for _, c in self.g0] + [c for _, c in self.g1]
        self.mults = [m for m, _ in self.g0] + [m for m, _ in self.g1]
        self.k0 = len(self.g0)
        self.dim = sum(self.sizes)

    def factors(self, x) -> list[np.ndarray]:
        out, k = [], 0
        for s in self.sizes:
            out.append(np.concatenate([x[k:k + s], [1.0]]))
            k += s
        return out

    @staticmethod
    def _prod(polys, mults) -> np.ndarray:
        c = np.array([1.0 + 0j])
        for p, m in zip(polys, mults):
            for _ in range(m):
                c = np.convolve(c, p)
        return c

    def F(self, x) -> np.ndarray:
        fs = self.factors(x)
        p0 = self._prod(fs[: self.k0], self.mults[: self.k0])
        p1 = self._prod(fs[self.k0:], self.mults[self.k0:])
        d = p0 - p1
        d[0] -= 1
        return np.concatenate([d[: self.n], [p0[self.n - 1]]])

    def J(self, x) -> np.ndarray:
        fs = self.factors(x)
        n = self.n
        cols = []
        for gi, (p, s) in enumerate(zip(fs, self.sizes)):
            first = gi < self.k0
            lo, hi = (0, self.k0) if first else (self.k0, len(fs))
            others = [q for i, q in enumerate(fs[lo:hi], lo) if i != gi]
            oms = [m for i, m in enumerate(self.mults[lo:hi], lo) if i != gi]
            m = self.mults[gi]
            base = m * np.convolve(self._prod(others, oms), self._prod([p], [m - 1]))
            for j in range(s):
                d = np.concatenate([np.zeros(j, complex), base])
                d = np.concatenate([d, np.zeros(n + 1 - len(d))])
                col = d[:n] if first else -d[:n]
                cols.append(np.concatenate([col, [d[n - 1] if first else 0.0]]))
        return np.array(cols).T

    def roots(self, x) -> tuple[np.ndarray, np.ndarray]:
        """beta and gamma in the order of mu and nu (sorted decreasing)."""
        fs = self.factors(x)
        by_mult0 = {m: list(np.roots(f[::-1])) for (m, _), f in zip(self.g0, fs[: self.k0])}
        by_mult1 = {m: list(np.roots(f[::-1])) for (m, _), f in zip(self.g1, fs[self.k0:])}
        return by_mult0, by_mult1


def _newton(fc: _FactorCoordinates, x0, tol: float, max_iter: int = 60):
    x = np.array(x0, dtype=complex)
    fx = fc.F(x)
    norm = np.linalg.norm(fx)
    history = []
    for _ in range(max_iter):
        if norm < tol:
            return x
        try:
            step = np.linalg.solve(fc.J(x), -fx)
        except np.linalg.LinAlgError:
            return None
        t = 1.0
        while t > 1e-8:
            xn = x + t * step
            fn = fc.F(xn)
            nn = np.linalg.norm(fn)
            if nn < norm:
                break
            t /= 2
        else:
            return None
        x, fx, norm = xn, fn, nn
        history.append(norm)
        # stagnation: no tenfold progress over the last 20 steps
        if len(history) > 20 and history[-1] > 0.1 * history[-21] and norm > 1e-6:
            return None
    return x if norm < tol * 100 else None


def _to_variables(sys: CritSystem, fc: _FactorCoordinates, x) -> np.ndarray:
    b, g = fc.roots(x)
    beta = [b[m].pop() for m in sys.mu]
    gamma = [g[k].pop() for k in sys.nu]
    return np.array(beta + gamma, dtype=complex)


def _polish(sys: CritSystem, x, steps: int = 3):
    """A few plain Newton steps in root coordinates."""
    f, jac = sys.compiled()
    for _ in range(steps):
        fx = np.asarray(f(*x), dtype=complex).ravel()
        try:
            step = np.linalg.lstsq(np.asarray(jac(*x), dtype=complex), -fx, rcond=None)[0]
        except np.linalg.LinAlgError:
            break
        xn = x + step
        if sys.residual(xn) < sys.residual(x):
            x = xn
        else:
            break
    return x


def _make_solution(sys: CritSystem, x, tol: float) -> NumericSolution:
    r = len(sys.mu)
    beta, gamma = x[:r], x[r:]
    coeffs = _poly_from_roots(beta, sys.mu)
    norm = coeffs[: sys.n - 1]
    real = bool(np.max(np.abs(norm.imag), initial=0.0) < 1e-9)
    if real:
        norm = norm.real.astype(complex)
    sol = NumericSolution(
        beta=beta, gamma=gamma, residual=sys.residual(x), is_real=real,
        normalized_coefficients=norm,
    )
    sol.critical_value_error = critical_value_error(sol.poly_coefficients())
    return sol


def solve_numeric(sys: CritSystem, attempts: int = DEFAULT_ATTEMPTS, tol: float = DEFAULT_TOL,
                  seed: int = 0, scale: float = 1.0) -> list[NumericSolution]:
    """Distinct normalized polynomials found from ``attempts`` random starts.

    Starts alternate between real and complex Gaussian vectors; a real start
    stays on the real locus, which is where real solutions are found.
    Newton runs in grouped-factor coordinates; each hit is mapped back to
    (beta, gamma), polished and checked against ``sys`` itself.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    rng = np.random.default_rng(seed)
    fc = _FactorCoordinates(sys.n, sys.mu, sys.nu)
    accept = max(tol * 100, 1e-10)
    found: list[NumericSolution] = []
    converged = 0
    for i in range(attempts):
        re = rng.standard_normal(fc.dim)
        im = rng.standard_normal(fc.dim)
        x0 = scale * (re if i % 2 == 0 else (re + 1j * im) / np.sqrt(2))
        x = _newton(fc, x0, tol)
        if x is None:
            continue
        converged += 1
        sol = _make_solution(sys, _polish(sys, _to_variables(sys, fc, x)), tol)
        if sol.residual >= accept:
            continue
        if any(np.max(np.abs(s.normalized_coefficients - sol.normalized_coefficients)) < CLUSTER_TOL
               for s in found):
            continue
        found.append(sol)
    if not found:
        log.warning("no solution converged in %d attempts", attempts)
    log.info("%d/%d starts converged, %d distinct polynomials", converged, attempts, len(found))
    found.sort(key=lambda s: tuple((round(c.real, 8), round(c.imag, 8))
                                   for c in s.normalized_coefficients))
    return found


def unity_orbit(sol: NumericSolution) -> list[np.ndarray]:
    """Coefficient vectors of P(zeta z), zeta^n = 1, duplicates removed."""
    n = len(sol.normalized_coefficients) + 1
    k = np.arange(n - 1)
    out: list[np.ndarray] = []
    for j in range(n):
        zeta = np.exp(2j * np.pi * j / n)
        v = sol.normalized_coefficients * zeta ** k
        if not any(np.max(np.abs(v - w), initial=0.0) < CLUSTER_TOL for w in out):
            out.append(v)
    return out


def quotient_by_unity(sols: list[NumericSolution]) -> list[NumericSolution]:
    """One solution per root-of-unity orbit, preferring real representatives."""
    groups: list[tuple[list[np.ndarray], list[NumericSolution]]] = []
    for s in sols:
        for orb, members in groups:
            if any(np.max(np.abs(s.normalized_coefficients - w), initial=0.0) < CLUSTER_TOL
                   for w in orb):
                members.append(s)
                break
        else:
            groups.append((unity_orbit(s), [s]))
    reps = []
    for _, members in groups:
        members.sort(key=lambda s: not s.is_real)
        reps.append(members[0])
    return reps
