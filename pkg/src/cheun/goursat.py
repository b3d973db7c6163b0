"""Expansion of the sigma = 0 solutions in Kummer and Goursat functions.

With sigma = 0 and the branch s = -gamma, w = z**gamma u' solves a
confluent Heun equation that is expanded as

    w = sum_n a_n 1F1(alpha0 + n; gamma0 + n; s0 z),
    s0 = -4p,  alpha0 = 1 + alpha - gamma,  gamma0 = 1 + delta - gamma,

with a_0 = 1 and R_n a_n + Q_{n-1} a_{n-1} + P_{n-2} a_{n-2} = 0.  Term-wise
integration of z**(-gamma) w gives

    u = C0 + z**(1-gamma) sum_n a_n 2F2(1-gamma, alpha0+n; 2-gamma, gamma0+n; s0 z),

normalised so that d(u - C0)/dz = (1 - gamma) z**(-gamma) w.

The second independent expansion follows by applying ``symmetry_map`` to
the parameters and evaluating at 1 - z; no separate code path exists.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial import Polynomial

from .errors import (
    C0UndeterminedError,
    DegenerateGammaError,
    DegeneratePolynomialError,
    DegenerateRnError,
    GZeroError,
    NotSigmaZeroError,
    ZeroGammaNError,
)
from .hyper import DEFAULT_CONTROL, SeriesControl, hyp1f1, hyp2f2, power_jet
from .jets import Jet
from .params import CheParams, coeff_g
from .relations import TOL_CLASS
from .verify import raw_che_residual

DELTA_BRANCH = "delta"                # delta = -N
ALPHA_GAMMA_BRANCH = "alpha_minus_gamma"  # alpha - gamma = -N


@dataclass(frozen=True)
class GoursatExpansion:
    params: CheParams
    alpha0: complex
    gamma0: complex
    s0: complex
    coeffs: tuple[complex, ...] = ()
    C0: complex | None = None

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1


def _R(n, gamma, delta, gamma0):
    gn = gamma0 + n
    return (1 + delta - gamma - gn) * (gn - 1)


def init_expansion(params: CheParams, N: int | None = None, tol_class: float = TOL_CLASS) -> GoursatExpansion:
    """Left-terminating initialisation (R_0 = 0).

    If ``N`` is given, R_n is also checked for 1 <= n <= N.
    """
    if abs(params.sigma) > tol_class:
        raise NotSigmaZeroError(f"the expansion needs sigma = 0, got {params.sigma}")
    p, g, d, a, _ = params.astuple()
    exp = GoursatExpansion(params, alpha0=1 + a - g, gamma0=1 + d - g, s0=-4 * p)
    if N is not None:
        for n in range(1, N + 1):
            if _R(n, g, d, exp.gamma0) == 0:
                raise DegenerateRnError(f"R_{n} = 0 (gamma - delta = {g - d})")
    return exp


def rqp(n: int, exp: GoursatExpansion) -> tuple[complex, complex, complex]:
    p, g, d, a, _ = exp.params.astuple()
    gn = exp.gamma0 + n
    an = exp.alpha0 + n
    if gn == 0:
        raise ZeroGammaNError(f"gamma_{n} = 0")
    r = (1 + d - g - gn) * (gn - 1)
    q = 4 * p * (g + a - d + gn) - g * d - r
    pp = -4 * p * (g + gn) * an / gn
    return r, q, pp


def compute_coefficients(exp: GoursatExpansion, N: int) -> GoursatExpansion:
    """a_0 = 1 and a_n = -(Q_{n-1} a_{n-1} + P_{n-2} a_{n-2}) / R_n.

    Q and P are only evaluated against nonzero coefficients, so a pole of
    P (gamma_n = 0) behind an exactly vanishing coefficient is harmless.
    If R_n = 0 while the right-hand side also vanishes, a_n is free and is
    set to 0 (the terminating choice); otherwise DegenerateRnError.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    a = [1 + 0j]
    prev = 0j
    for n in range(1, N + 1):
        t1 = rqp(n - 1, exp)[1] * a[-1] if a[-1] != 0 else 0j
        t2 = rqp(n - 2, exp)[2] * prev if n >= 2 and prev != 0 else 0j
        r = _R(n, exp.params.gamma, exp.params.delta, exp.gamma0)
        rhs = t1 + t2
        if r == 0:
            if abs(rhs) > 1e-12 * max(abs(t1), abs(t2)):
                raise DegenerateRnError(f"R_{n} = 0 with a nonvanishing right-hand side")
            nxt = 0j
        else:
            nxt = -rhs / r
        prev = a[-1]
        a.append(nxt)
    return replace(exp, coeffs=tuple(a))


def recurrence_residuals(exp: GoursatExpansion) -> list[float]:
    """|R_n a_n + Q_{n-1} a_{n-1} + P_{n-2} a_{n-2}| relative to its largest term."""
    a = exp.coeffs
    out = []
    for n in range(1, len(a)):
        terms = [rqp(n, exp)[0] * a[n], rqp(n - 1, exp)[1] * a[n - 1]]
        if n >= 2:
            terms.append(rqp(n - 2, exp)[2] * a[n - 2])
        size = max(abs(t) for t in terms)
        out.append(0.0 if size == 0 else abs(sum(terms)) / size)
    return out


def eval_w(exp: GoursatExpansion, z: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> Jet:
    z = complex(z)
    total = Jet(0j)
    for n, an in enumerate(exp.coeffs):
        if an == 0:
            continue
        total = total + an * hyp1f1(exp.alpha0 + n, exp.gamma0 + n, exp.s0 * z, ctl).rescaled(exp.s0)
    return total


def eval_u_core(exp: GoursatExpansion, z: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> Jet:
    """u - C0 = z**(1-gamma) sum_n a_n 2F2(...)."""
    g = exp.params.gamma
    if g == 1:
        raise DegenerateGammaError("gamma = 1: z**(1-gamma) and 1/(1-gamma) degenerate")
    z = complex(z)
    series = Jet(0j)
    for n, an in enumerate(exp.coeffs):
        if an == 0:
            continue
        series = series + an * hyp2f2(
            1 - g, exp.alpha0 + n, 2 - g, exp.gamma0 + n, exp.s0 * z, ctl).rescaled(exp.s0)
    return power_jet(Jet.variable(z), 1 - g) * series


def eval_u(exp: GoursatExpansion, z: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> Jet:
    if exp.C0 is None:
        raise C0UndeterminedError("determine C0 first (or set it to 0 for a terminated series)")
    return eval_u_core(exp, z, ctl) + exp.C0


def determine_C0(exp: GoursatExpansion, z_star: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """C0 = -Res(u - C0)(z*) / g(z*); the residual is linear in C0."""
    g = coeff_g(exp.params, z_star)
    if exp.params.alpha == 0 or g == 0:
        raise GZeroError("alpha = 0: g vanishes and C0 is not fixed by the equation")
    return -raw_che_residual(exp.params, lambda z: eval_u_core(exp, z, ctl), z_star) / g


def with_C0(exp: GoursatExpansion, z_star: complex = 0.25 + 0.1j) -> GoursatExpansion:
    return replace(exp, C0=determine_C0(exp, z_star))


def reduced_coeffs(params: CheParams, z: complex) -> tuple[complex, complex]:
    """Coefficients of the equation for w (the s = -gamma reduction at sigma = 0)."""
    p, g, d, a, _ = params.astuple()
    z = complex(z)
    return (4 * p - g / z + (d + 1) / (z - 1),
            (4 * p * (1 + a - g) * z - g * d + 4 * p * g) / (z * (z - 1)))


# -- termination -----------------------------------------------------------

def branch_params(N: int, branch: str, gamma: complex, free: complex) -> tuple[complex, complex, complex]:
    """(gamma, delta, alpha) with the branch constraint applied; ``free`` is
    alpha on the delta branch and delta on the alpha-gamma branch."""
    gamma, free = complex(gamma), complex(free)
    if branch == DELTA_BRANCH:
        return gamma, complex(-N), free
    if branch == ALPHA_GAMMA_BRANCH:
        return gamma, free, gamma - N
    raise ValueError(f"unknown branch {branch!r}")


def _poly_q(n, gamma, delta, alpha) -> Polynomial:
    gn = 1 + delta - gamma + n
    r = (1 + delta - gamma - gn) * (gn - 1)
    return Polynomial([-gamma * delta - r, 4 * (gamma + alpha - delta + gn)])


def _poly_p(n, gamma, delta, alpha) -> Polynomial:
    gn = 1 + delta - gamma + n
    an = 1 + alpha - gamma + n
    if gn == 0:
        raise ZeroGammaNError(f"gamma_{n} = 0")
    return Polynomial([0, -4 * (gamma + gn) * an / gn])


def coefficient_polynomials(N: int, branch: str, gamma: complex, free: complex) -> list[Polynomial]:
    """a_0(p), ..., a_N(p) as polynomials in p (R_n does not involve p)."""
    g, d, a = branch_params(N, branch, gamma, free)
    gamma0 = 1 + d - g
    polys = [Polynomial([1 + 0j])]
    prev = None
    for n in range(1, N + 1):
        r = _R(n, g, d, gamma0)
        if r == 0:
            raise DegenerateRnError(f"R_{n} = 0 (gamma - delta = {g - d})")
        acc = _poly_q(n - 1, g, d, a) * polys[-1]
        if prev is not None:
            acc = acc + _poly_p(n - 2, g, d, a) * prev
        prev = polys[-1]
        polys.append(-acc / r)
    return polys


def termination_polynomial(N: int, branch: str, gamma: complex, free: complex) -> Polynomial:
    """a_N as a polynomial in p; its roots terminate the series after N terms."""
    if N < 1:
        raise ValueError("N must be positive")
    return coefficient_polynomials(N, branch, gamma, free)[N]


def find_termination_p(poly: Polynomial) -> np.ndarray:
    """All roots (with multiplicity) by companion-matrix eigenvalues, each
    refined by one Newton step."""
    coef = np.asarray(poly.coef, dtype=complex)
    deg = len(coef) - 1
    if deg < 1 or coef[-1] == 0:
        raise DegeneratePolynomialError(f"polynomial of degree {deg} has no roots to find")
    roots = poly.roots().astype(complex)
    dpoly = poly.deriv()
    polished = []
    for r in roots:
        d = dpoly(r)
        polished.append(r - poly(r) / d if d != 0 else r)
    return np.array(polished)


@dataclass(frozen=True)
class TerminationCase:
    N: int
    branch: str
    gamma: complex
    delta: complex
    alpha: complex
    polynomial: Polynomial
    p_roots: tuple[complex, ...]


def termination_case(N: int, branch: str, gamma: complex, free: complex) -> TerminationCase:
    g, d, a = branch_params(N, branch, gamma, free)
    poly = termination_polynomial(N, branch, gamma, free)
    roots = find_termination_p(poly)
    return TerminationCase(N, branch, g, d, a, poly, tuple(complex(r) for r in roots))


def terminated_expansion(case: TerminationCase, p_root: complex, extra: int = 2) -> GoursatExpansion:
    """Expansion at a termination root, with a_{N}..a_{N+extra} computed."""
    params = CheParams(p_root, case.gamma, case.delta, case.alpha, 0)
    exp = init_expansion(params)
    return compute_coefficients(exp, case.N + extra)


def truncated(exp: GoursatExpansion, N: int, C0: complex = 0j) -> GoursatExpansion:
    """Keep a_0..a_{N-1} and fix C0."""
    return replace(exp, coeffs=exp.coeffs[:N], C0=C0)
