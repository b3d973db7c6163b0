"""Parameters and coefficient functions of the confluent Heun equation.

The equation is written in the form

    u'' + (4p + gamma/z + delta/(z-1)) u' + (4 p alpha z - sigma)/(z(z-1)) u = 0,

so the accessory parameter ``sigma`` enters the numerator with a minus
sign.  No conversion to other conventions is offered.
"""
from __future__ import annotations

import cmath
from dataclasses import astuple, dataclass
from typing import NamedTuple

from .errors import GZeroError, NonFiniteError, SingularPointError, ZeroPError

#: Evaluation points closer than this to a pole are rejected.
POLE_GUARD = 1e-8


@dataclass(frozen=True, slots=True)
class CheParams:
    p: complex
    gamma: complex
    delta: complex
    alpha: complex
    sigma: complex

    def __post_init__(self):
        for name in ("p", "gamma", "delta", "alpha", "sigma"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if not all(cmath.isfinite(v) for v in astuple(self)):
            raise NonFiniteError(f"non-finite parameter in {astuple(self)}")
        if self.p == 0:
            raise ZeroPError("p must be nonzero")

    def astuple(self) -> tuple[complex, ...]:
        return astuple(self)

    def replace(self, **changes) -> CheParams:
        fields = dict(zip(("p", "gamma", "delta", "alpha", "sigma"), astuple(self)))
        fields.update(changes)
        return CheParams(**fields)

    @property
    def extra_singularity(self) -> complex | None:
        """Location sigma/(4 p alpha) of the additional singular point of the
        derivative equation, or None when alpha = 0."""
        k = 4 * self.p * self.alpha
        return None if k == 0 else self.sigma / k


def validate(p, gamma, delta, alpha, sigma) -> CheParams:
    return CheParams(p, gamma, delta, alpha, sigma)


class OdeCoeffs(NamedTuple):
    a1: complex
    a0: complex


def _check_regular(z: complex) -> None:
    if abs(z) < POLE_GUARD or abs(z - 1) < POLE_GUARD:
        raise SingularPointError(f"z = {z} is at a singular point of the equation")


def coeff_f(params: CheParams, z: complex) -> complex:
    z = complex(z)
    _check_regular(z)
    return 4 * params.p + params.gamma / z + params.delta / (z - 1)


def coeff_g(params: CheParams, z: complex) -> complex:
    z = complex(z)
    _check_regular(z)
    return (4 * params.p * params.alpha * z - params.sigma) / (z * (z - 1))


def coeff_df(params: CheParams, z: complex) -> complex:
    z = complex(z)
    _check_regular(z)
    return -params.gamma / z**2 - params.delta / (z - 1) ** 2


def log_deriv_g(params: CheParams, z: complex) -> complex:
    """g'/g in its cancelled rational form.

    When alpha = 0 the term from the numerator is dropped, which keeps the
    formula valid even for sigma = 0 where g vanishes identically (any
    multiplier works in that case).
    """
    z = complex(z)
    _check_regular(z)
    k = 4 * params.p * params.alpha
    extra = 0j
    if k != 0:
        zs = params.sigma / k
        if abs(z - zs) < POLE_GUARD:
            raise GZeroError(f"g vanishes at z = {zs}")
        extra = k / (k * z - params.sigma)
    return extra - 1 / z - 1 / (z - 1)


def derivative_ode_coeffs(params: CheParams, z: complex, log_deriv: complex | None = None) -> OdeCoeffs:
    """Coefficients of the second-order equation obeyed by w = u'.

    Returns ``(a1, a0)`` with ``w'' + a1 w' + a0 w = 0``.  ``log_deriv``
    overrides g'/g; only meaningful when g vanishes identically.
    """
    z = complex(z)
    h = log_deriv_g(params, z) if log_deriv is None else complex(log_deriv)
    f = coeff_f(params, z)
    a1 = f - h
    a0 = coeff_g(params, z) + coeff_df(params, z) - f * h
    return OdeCoeffs(a1, a0)


def che_coeffs(params: CheParams, z: complex) -> OdeCoeffs:
    """Coefficients ``(f, g)`` of the equation itself."""
    return OdeCoeffs(coeff_f(params, z), coeff_g(params, z))
