"""Independent checks: ODE residuals and a Taylor-stepping integrator.

Neither tool shares code with the series constructions it is used to
check, beyond the coefficient functions of the equation itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import PathTooCloseToSingularityError, SingularPointError, StepUnderflowError
from .jets import C2Fn
from .params import CheParams, coeff_f, coeff_g

RESIDUAL_GUARD = 1e-3


@dataclass(frozen=True)
class ResidualReport:
    points: tuple[complex, ...]
    residuals: tuple[float, ...]
    max_residual: float
    scale: float


def generic_residual(
    a1_fn: Callable[[complex], complex],
    a0_fn: Callable[[complex], complex],
    fn: C2Fn,
    zs: Iterable[complex],
) -> ResidualReport:
    """Residual of u'' + a1 u' + a0 u = 0, normalised by the largest of
    |u''|, |a1 u'|, |a0 u| seen on the sample (falling back to max |u| when
    all three vanish)."""
    points = tuple(complex(z) for z in zs)
    raw = []
    scale = 0.0
    umax = 0.0
    for z in points:
        a1, a0 = a1_fn(z), a0_fn(z)
        u, du, d2u = fn(z)
        t1, t2 = a1 * du, a0 * u
        raw.append(abs(d2u + t1 + t2))
        scale = max(scale, abs(d2u), abs(t1), abs(t2))
        umax = max(umax, abs(u))
    if scale == 0:
        scale = umax
    residuals = tuple(r / scale if scale > 0 else 0.0 for r in raw)
    return ResidualReport(points, residuals, max(residuals, default=0.0), scale)


def che_residual(params: CheParams, fn: C2Fn, zs: Iterable[complex]) -> ResidualReport:
    zs = [complex(z) for z in zs]
    for z in zs:
        if abs(z) < RESIDUAL_GUARD or abs(z - 1) < RESIDUAL_GUARD:
            raise SingularPointError(f"residual point {z} too close to 0 or 1")
    return generic_residual(lambda z: coeff_f(params, z), lambda z: coeff_g(params, z), fn, zs)


def raw_che_residual(params: CheParams, fn: C2Fn, z: complex) -> complex:
    """Unnormalised u'' + f u' + g u at a single point."""
    u, du, d2u = fn(z)
    return d2u + coeff_f(params, z) * du + coeff_g(params, z) * u


# -- Taylor stepping -------------------------------------------------------

TAYLOR_ORDER = 20


def _local_taylor(params: CheParams, c: complex, u0: complex, du0: complex, order: int) -> list[complex]:
    """Taylor coefficients of the solution about c from z(z-1)u'' + B u' + C u = 0."""
    p, g, d, a, s = params.astuple()
    A0, A1 = c * (c - 1), 2 * c - 1            # A2 = 1
    B0 = 4 * p * A0 + g * (c - 1) + d * c
    B1 = 4 * p * A1 + g + d
    B2 = 4 * p
    C0, C1 = 4 * p * a * c - s, 4 * p * a
    u = [complex(u0), complex(du0)]
    for n in range(order - 1):
        acc = (A1 * (n + 1) * n + B0 * (n + 1)) * u[n + 1]
        acc += (n * (n - 1) + B1 * n + C0) * u[n]
        if n >= 1:
            acc += (B2 * (n - 1) + C1) * u[n - 1]
        u.append(-acc / (A0 * (n + 2) * (n + 1)))
    return u


def _path_distance(z0: complex, z1: complex, point: complex) -> float:
    d = z1 - z0
    if d == 0:
        return abs(z0 - point)
    t = ((point - z0) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(z0 + t * d - point)


def taylor_oracle(
    params: CheParams,
    z0: complex,
    u0: complex,
    du0: complex,
    z_target: complex,
    *,
    order: int = TAYLOR_ORDER,
    tol: float = 1e-13,
    min_distance: float = 0.05,
    min_step: float = 1e-12,
) -> tuple[complex, complex]:
    """Integrate the equation along the straight segment z0 -> z_target.

    Each step expands the solution to ``order`` terms about the current
    point; the step is accepted when the last two terms fall below
    ``tol`` times the solution size, otherwise it is halved.
    """
    z0, z_target = complex(z0), complex(z_target)
    for sing in (0j, 1 + 0j):
        if _path_distance(z0, z_target, sing) < min_distance:
            raise PathTooCloseToSingularityError(f"path passes within {min_distance} of z = {sing}")
    u, du = complex(u0), complex(du0)
    z = z0
    total = abs(z_target - z0)
    if total == 0:
        return u, du
    direction = (z_target - z0) / total
    travelled = 0.0
    while travelled < total:
        radius = min(abs(z), abs(z - 1))
        step = min(total - travelled, 0.5 * radius)
        coeffs = _local_taylor(params, z, u, du, order)
        size = max(abs(u), abs(du), 1e-300)
        while True:
            if step < min_step:
                raise StepUnderflowError(f"step size underflow near z = {z}")
            tail = abs(coeffs[-1]) * step ** (order - 1) + abs(coeffs[-2]) * step ** (order - 2)
            if tail < tol * size:
                break
            step *= 0.5
        h = direction * step
        # Horner for value and derivative
        nu = ndu = 0j
        for k in range(len(coeffs) - 1, -1, -1):
            ndu = ndu * h + nu
            nu = nu * h + coeffs[k]
        u, du = nu, ndu
        travelled += step
        z = z0 + direction * travelled if travelled < total else z_target
    return u, du


def finite_difference(fn: Callable[[complex], complex], z: complex, h: float = 1e-5) -> complex:
    """Centred first difference along the real direction (analytic fn)."""
    return (fn(z + h) - fn(z - h)) / (2 * h)


def relative_error(a: complex, b: complex) -> float:
    denom = max(abs(a), abs(b))
    return 0.0 if denom == 0 else abs(a - b) / denom


def isclose_all(values: Sequence[float], tol: float) -> bool:
    return all(v <= tol and not math.isnan(v) for v in values)
