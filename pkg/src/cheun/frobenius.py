"""Frobenius series of the confluent Heun equation about z = 0.

Multiplying the equation by z(z-1) and inserting u = sum_k c_k z^(k+rho)
gives, for n >= 1, the three-term recurrence

    (rho+n)(rho+n-1+gamma) c_n
        = [(rho+n-1)(rho+n-2+gamma+delta-4p) - sigma] c_{n-1}
          + 4p (rho+n-2+alpha) c_{n-2},

with c_0 = 1, c_{-1} = 0 and indicial roots rho in {0, 1-gamma}.  The
normalisation HC(0) = 1 makes HC'(0) = c_1 = -sigma/gamma.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import OutOfDiskError, ResonantGammaError, ZeroBaseError
from .hyper import _is_nonpositive_integer, power_jet
from .jets import C2Fn, Jet
from .params import CheParams

DEFAULT_ORDER = 100
R_MAX = 0.5


@dataclass(frozen=True)
class PowerSeries:
    """z**exponent * sum(coeffs[k] * z**k), expanded about the origin."""

    params: CheParams
    exponent: complex
    coeffs: tuple[complex, ...]
    center: complex = 0j

    def polynomial_jet(self, z: complex) -> Jet:
        z = complex(z)
        v = d1 = d2 = 0j
        for c in reversed(self.coeffs):
            d2 = d2 * z + 2 * d1
            d1 = d1 * z + v
            v = v * z + c
        return Jet(v, d1, d2)

    def __call__(self, z: complex) -> Jet:
        z = complex(z)
        series = self.polynomial_jet(z)
        if self.exponent == 0:
            return series
        if z == 0:
            raise ZeroBaseError("the exponent-shifted series is singular at z = 0")
        return power_jet(Jet.variable(z), self.exponent) * series


def _check_exponent(params: CheParams, exponent: complex) -> complex:
    g = params.gamma
    if abs(exponent) <= 1e-12:
        if _is_nonpositive_integer(g):
            raise ResonantGammaError(f"gamma = {g} is a nonpositive integer")
        return 0j
    if abs(exponent - (1 - g)) <= 1e-12 * (1 + abs(g)):
        if g == 1:
            raise ResonantGammaError("gamma = 1: the two exponents coincide")
        if _is_nonpositive_integer(2 - g):
            raise ResonantGammaError(f"gamma = {g}: exponents differ by an integer")
        return 1 - g
    raise ValueError(f"exponent {exponent} is not an indicial root (0 or 1-gamma)")


def frobenius_coefficients(params: CheParams, exponent: complex = 0, N: int = DEFAULT_ORDER) -> PowerSeries:
    if N < 1:
        raise ValueError("N must be positive")
    rho = _check_exponent(params, complex(exponent))
    p, g, d, a, s = params.astuple()
    c = [1 + 0j]
    prev2 = 0j
    for n in range(1, N + 1):
        m = rho + n
        lead = m * (m - 1 + g)
        if lead == 0:
            raise ResonantGammaError(f"recurrence denominator vanishes at n = {n}")
        rhs = ((m - 1) * (m - 2 + g + d - 4 * p) - s) * c[-1] + 4 * p * (m - 2 + a) * prev2
        prev2 = c[-1]
        c.append(rhs / lead)
    return PowerSeries(params, rho, tuple(c))


def _check_disk(z: complex, r_max: float) -> None:
    if not 0 < r_max < 1:
        raise ValueError("r_max must lie in (0, 1)")
    if abs(z) > r_max:
        raise OutOfDiskError(f"|z| = {abs(z):.6g} exceeds r_max = {r_max}")


def heun_function(params: CheParams, N: int = DEFAULT_ORDER, r_max: float = R_MAX) -> C2Fn:
    """Evaluator for HC(params; z), the solution analytic at 0 with HC(0) = 1."""
    series = frobenius_coefficients(params, 0, N)

    def hc(z: complex) -> Jet:
        z = complex(z)
        _check_disk(z, r_max)
        return series(z)

    return hc


def second_solution(params: CheParams, N: int = DEFAULT_ORDER, r_max: float = R_MAX) -> C2Fn:
    """Evaluator for z**(1-gamma) * (1 + O(z)), principal branch."""
    if params.gamma == 1:
        raise ResonantGammaError("gamma = 1: the two exponents coincide")
    series = frobenius_coefficients(params, 1 - params.gamma, N)

    def u2(z: complex) -> Jet:
        z = complex(z)
        _check_disk(z, r_max)
        return series(z)

    return u2


def hc_eval(params: CheParams, z: complex, N: int = DEFAULT_ORDER, r_max: float = R_MAX) -> Jet:
    return heun_function(params, N, r_max)(z)


def second_solution_eval(params: CheParams, z: complex, N: int = DEFAULT_ORDER, r_max: float = R_MAX) -> Jet:
    return second_solution(params, N, r_max)(z)
