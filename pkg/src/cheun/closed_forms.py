"""Explicit solutions on the three special parameter loci.

Each family is generated from its free parameters, so only loci on which
the closed forms exist can be built:

* case 1: alpha = 0, delta = -1, sigma = 4p + gamma - 1   (free: p, gamma)
* case 2: sigma = 0, delta = -1, gamma = -4p(1+alpha)     (free: p, alpha)
* case 3: sigma = 4p alpha, gamma = -1, delta = 4p(1+alpha)  (free: p, alpha)

``w_branches`` solve the reduced (Kummer-type) equation for w = u'/phi;
``u_branches`` solve the confluent Heun equation.  Antiderivatives that the
literature writes with Meijer's G are built here as 2F2 series obtained by
integrating term by term.  Integration constants are not copied from
anywhere: the residual of u + c is linear in c with slope g(z), which fixes
c from a single sample point.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BranchCutError,
    DegenerateAlphaError,
    DegenerateGammaError,
    PoleParameterError,
)
from .hyper import (
    DEFAULT_CONTROL,
    SeriesControl,
    _is_nonpositive_integer,
    hyp1f1,
    hyp2f2,
    power_jet,
    upper_gamma,
)
from .jets import C2Fn, Jet, exp_jet, linear
from .params import CheParams, coeff_g
from .verify import raw_che_residual

CASE1, CASE2, CASE3 = "case1_alpha_zero", "case2_sigma_zero", "case3_sigma_4palpha"


@dataclass(frozen=True)
class ClosedFormFamily:
    case: str
    free_params: tuple[complex, complex]
    locus: CheParams
    w_branches: tuple[C2Fn, C2Fn]
    u_branches: tuple[C2Fn, C2Fn]
    prefactor: C2Fn
    constants: dict = field(default_factory=dict)

    def reduced_coeffs(self, z: complex) -> tuple[complex, complex]:
        """Coefficients (a1, a0) of the equation solved by the w branches."""
        p, g, d, a, _ = self.locus.astuple()
        z = complex(z)
        if self.case == CASE1:
            return 4 * p + (g + 1) / z, 8 * p / z
        if self.case == CASE2:
            k = 4 * p * (1 + a)
            return 4 * p + k / z, 4 * p * (1 + 4 * p) * (1 + a) / z
        k = 4 * p * (1 + a)
        return 4 * p - k / (z - 1), 4 * p * (1 - 4 * p) * (1 + a) / (z - 1)


def _variable_jet(c0, c1, z) -> Jet:
    return linear(c0, c1, z)


def _fix_constant(locus: CheParams, fn: C2Fn, z_star: complex) -> complex:
    """Constant c such that fn + c solves the equation (residual linearity)."""
    g = coeff_g(locus, z_star)
    if g == 0:
        return 0j
    return -raw_che_residual(locus, fn, z_star) / g


def _shifted(fn: C2Fn, c: complex) -> C2Fn:
    return lambda z: fn(z) + c


def _reference_point(p: complex) -> complex:
    # arg(-4 p z) = -pi/2: well away from the cut of (-4pz)**a
    return 0.25j * (p.conjugate() / abs(p))


def _check_lower(*params: complex) -> None:
    for b in params:
        if _is_nonpositive_integer(complex(b)):
            raise PoleParameterError(f"lower parameter {b} is a nonpositive integer")


# -- case 1 ----------------------------------------------------------------

def case1_family(p: complex, gamma: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> ClosedFormFamily:
    p, gamma = complex(p), complex(gamma)
    if gamma in (0, 1):
        raise DegenerateGammaError("case 1 needs gamma not in {0, 1}")
    sigma = 4 * p + gamma - 1
    locus = CheParams(p, gamma, -1, 0, sigma)
    _check_lower(gamma + 1)

    def x_of(z):
        x = _variable_jet(0, -4 * p, z)
        if x.value.real < 0 and abs(x.value.imag) <= 1e-12 * abs(x.value):
            raise BranchCutError(f"-4pz = {x.value} lies on the branch cut")
        return x

    def w1(z):
        x = x_of(z)
        return _variable_jet(gamma - 1, 4 * p, z) * exp_jet(x) * power_jet(x, -gamma)

    def w2(z):
        z = complex(z)
        return exp_jet(_variable_jet(0, -4 * p, z)) * hyp1f1(gamma - 1, gamma + 1, 4 * p * z, ctl).rescaled(4 * p)

    def u1(z):
        x = x_of(z)
        return exp_jet(x) * power_jet(x, 1 - gamma)

    def y(z):
        # Y = e^x x^(1-gamma) Gamma(gamma, x) with x = -4pz
        xv = x_of(z).value
        val = cmath.exp(xv) * power_jet(Jet.variable(xv), 1 - gamma).value * upper_gamma(gamma, xv, ctl)
        dy = val * (1 - gamma + xv) / xv - 1
        d2y = dy * (1 - gamma + xv) / xv - val * (1 - gamma) / xv**2
        return Jet(val, dy, d2y).rescaled(-4 * p)

    c = -sigma / (4 * p)
    core = lambda z: c * y(z)
    const = _fix_constant(locus, core, _reference_point(p)) if sigma != 0 else 1 + 0j
    u2 = _shifted(core, const)
    return ClosedFormFamily(
        CASE1, (p, gamma), locus, (w1, w2), (u1, u2),
        prefactor=lambda z: Jet(1 + 0j),
        constants={"u2_constant": const, "u2_gamma_coefficient": c},
    )


# -- case 2 ----------------------------------------------------------------

def _check_alpha(alpha: complex) -> None:
    if alpha in (0, -1):
        raise DegenerateAlphaError("cases 2 and 3 need alpha not in {0, -1}")


def case2_family(p: complex, alpha: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> ClosedFormFamily:
    p, alpha = complex(p), complex(alpha)
    _check_alpha(alpha)
    s = 4 * p * (1 + alpha)
    locus = CheParams(p, -s, -1, alpha, 0)
    _check_lower(2 - s, s, -s, 1 - s)

    def w1(z):
        z = complex(z)
        return (exp_jet(_variable_jet(0, -4 * p, z)) * power_jet(Jet.variable(z), 1 - s)
                * hyp1f1(-alpha - s, 2 - s, 4 * p * z, ctl).rescaled(4 * p))

    def w2(z):
        z = complex(z)
        return exp_jet(_variable_jet(0, -4 * p, z)) * hyp1f1(-1 - alpha, s, 4 * p * z, ctl).rescaled(4 * p)

    def phi(z):
        return power_jet(Jet.variable(complex(z)), s)

    def u1_core(z):
        # integral of z e^{-4pz} 1F1(-alpha-s; 2-s; 4pz) from 0
        z = complex(z)
        zz = Jet(z * z / 2, z, 1 + 0j)
        return zz * hyp2f2(2 + alpha, 2, 2 - s, 3, -4 * p * z, ctl).rescaled(-4 * p)

    def u2(z):
        z = complex(z)
        first = hyp1f1(alpha, -s, -4 * p * z, ctl).rescaled(-4 * p)
        second = hyp1f1(1 + alpha, 1 - s, -4 * p * z, ctl).rescaled(-4 * p)
        return first - _variable_jet(0, alpha / (1 + alpha), z) * second

    const = _fix_constant(locus, u1_core, _reference_point(p))
    return ClosedFormFamily(
        CASE2, (p, alpha), locus, (w1, w2), (_shifted(u1_core, const), u2),
        prefactor=phi, constants={"u1_constant": const},
    )


# -- case 3 ----------------------------------------------------------------

def case3_family(p: complex, alpha: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> ClosedFormFamily:
    """Direct construction on the sigma = 4 p alpha locus."""
    p, alpha = complex(p), complex(alpha)
    _check_alpha(alpha)
    k = 4 * p * (1 + alpha)
    locus = CheParams(p, -1, k, alpha, 4 * p * alpha)
    _check_lower(2 + k, -k, k, 1 + k)

    def zm1(z):
        return _variable_jet(-1, 1, z)

    def w1(z):
        z = complex(z)
        t = 4 * p * (z - 1)
        return (exp_jet(_variable_jet(4 * p, -4 * p, z)) * power_jet(zm1(z), 1 + k)
                * hyp1f1(-alpha + k, 2 + k, t, ctl).rescaled(4 * p))

    def w2(z):
        z = complex(z)
        t = 4 * p * (z - 1)
        return exp_jet(_variable_jet(4 * p, -4 * p, z)) * hyp1f1(-1 - alpha, -k, t, ctl).rescaled(4 * p)

    def phi(z):
        return power_jet(zm1(z), -k)

    def u1_core(z):
        z = complex(z)
        q = zm1(z)
        return (q * q / 2) * hyp2f2(2 + alpha, 2, 2 + k, 3, -4 * p * (z - 1), ctl).rescaled(-4 * p)

    def u2(z):
        z = complex(z)
        t = -4 * p * (z - 1)
        first = hyp1f1(alpha, k, t, ctl).rescaled(-4 * p)
        second = hyp1f1(1 + alpha, 1 + k, t, ctl).rescaled(-4 * p)
        return first + zm1(z) * (alpha / (1 + alpha)) * second

    const = _fix_constant(locus, u1_core, 1 - _reference_point(-p))
    return ClosedFormFamily(
        CASE3, (p, alpha), locus, (w1, w2), (_shifted(u1_core, const), u2),
        prefactor=phi, constants={"u1_constant": const},
    )


# -- symmetry --------------------------------------------------------------

def symmetry_map(params: CheParams) -> CheParams:
    """Parameters of the equation satisfied by v(z) = u(1 - z).

    gamma and delta swap, p changes sign and sigma becomes sigma - 4 p alpha,
    which is what takes the sigma = 0 case to the sigma = 4 p' alpha case.
    """
    p, g, d, a, s = params.astuple()
    return CheParams(-p, d, g, a, s - 4 * p * a)


def mirror(fn: C2Fn) -> C2Fn:
    """z -> fn(1 - z) as a jet."""
    def mirrored(z):
        j = fn(1 - complex(z))
        return Jet(j.value, -j.d1, j.d2)
    return mirrored


def mirrored_family(family: ClosedFormFamily) -> ClosedFormFamily:
    """Image of a family under z -> 1 - z (case 2 maps onto case 3)."""
    case = {CASE2: CASE3, CASE3: CASE2}.get(family.case, family.case)
    p, a = family.free_params
    return ClosedFormFamily(
        case, (-p, a) if case != family.case else family.free_params,
        symmetry_map(family.locus),
        tuple(mirror(w) for w in family.w_branches),
        tuple(mirror(u) for u in family.u_branches),
        prefactor=mirror(family.prefactor),
        constants=dict(family.constants),
    )


# -- structural checks -----------------------------------------------------

def ratio_spread(values: Sequence[complex]) -> tuple[complex, float]:
    """Mean and largest relative deviation from it."""
    mean = sum(values) / len(values)
    return mean, max(abs(v - mean) for v in values) / abs(mean)


def proportionality(f: C2Fn, g: C2Fn, zs: Iterable[complex]) -> tuple[complex, float]:
    """Constant c with f = c g on the sample, and the relative spread."""
    return ratio_spread([f(z).value / g(z).value for z in zs])


def project_derivative(family: ClosedFormFamily, which: int, zs: Sequence[complex]) -> tuple[np.ndarray, float]:
    """Write u'/phi as c1 w1 + c2 w2.

    The coefficients come from the first two points; the return value also
    holds the largest relative mismatch on the remaining points.
    """
    u = family.u_branches[which]
    w1, w2 = family.w_branches
    lhs = [u(z).d1 / family.prefactor(z).value for z in zs]
    basis = np.array([[w1(z).value, w2(z).value] for z in zs])
    coeffs = np.linalg.solve(basis[:2], np.array(lhs[:2]))
    worst = 0.0
    for row, target in zip(basis[2:], lhs[2:]):
        pred = row @ coeffs
        worst = max(worst, abs(pred - target) / max(abs(target), abs(pred)))
    return coeffs, worst
