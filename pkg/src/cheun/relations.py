"""Reductions of the derivative equation back to a confluent Heun equation.

The equation for w = u' generally acquires a fourth singular point at
sigma/(4 p alpha).  It merges with an existing one when alpha = 0,
sigma = 0 or sigma = 4 p alpha, and then u' = scale * phi(z) * HC(target; z)
with phi = 1, z**s or (z-1)**s respectively.

With HC normalised to HC(0) = 1 the two sides differ by a constant, so
every relation carries an explicit ``scale`` obtained by matching the
lowest-order Frobenius terms.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DegenerateBranchesError,
    NotApplicableError,
)
from .frobenius import DEFAULT_ORDER, heun_function, second_solution
from .hyper import cpow
from .jets import Jet
from .params import CheParams, coeff_f, coeff_g, derivative_ode_coeffs

TOL_CLASS = 1e-12
NAN = complex(math.nan, math.nan)


class Case(enum.Flag):
    GENERIC = 0
    ALPHA_ZERO = enum.auto()
    SIGMA_ZERO = enum.auto()
    SIGMA_EQ_4P_ALPHA = enum.auto()


def classify(params: CheParams, tol_class: float = TOL_CLASS) -> Case:
    """All reducible cases the parameters fall into (they may overlap)."""
    tag = Case.GENERIC
    k = 4 * params.p * params.alpha
    if abs(params.alpha) <= tol_class:
        tag |= Case.ALPHA_ZERO
    if abs(params.sigma) <= tol_class:
        tag |= Case.SIGMA_ZERO
    if abs(params.sigma - k) <= tol_class * (1 + abs(k)):
        tag |= Case.SIGMA_EQ_4P_ALPHA
    return tag


@dataclass(frozen=True)
class DerivRelation:
    """u'(z) = scale * prefactor(z) * HC(target; z).

    ``prefactor_center`` is 0 for z**s and 1 for (z-1)**s.  For the s = -delta
    branch, ``scale`` refers to the exponent-(1-delta) solution at z = 1
    (leading coefficient 1) and the target solution analytic there.
    """

    case: Case
    s: complex
    prefactor_center: int
    target: CheParams
    scale: complex
    branch: str = ""

    def prefactor(self, z: complex) -> Jet:
        z = complex(z)
        if self.s == 0:
            return Jet(1 + 0j)
        base = z - self.prefactor_center
        v = cpow(base, self.s)
        return Jet(v, self.s * v / base, self.s * (self.s - 1) * v / base**2)

    def phi_log_derivs(self, z: complex) -> tuple[complex, complex]:
        """phi'/phi and phi''/phi."""
        if self.s == 0:
            return 0j, 0j
        base = complex(z) - self.prefactor_center
        return self.s / base, self.s * (self.s - 1) / base**2


def _require(params: CheParams, flag: Case, tol_class: float) -> None:
    if flag not in classify(params, tol_class):
        raise NotApplicableError(f"{flag.name} does not hold for {params}")


def _safe_div(a: complex, b: complex) -> complex:
    return NAN if b == 0 else a / b


def relation_alpha_zero(params: CheParams, tol_class: float = TOL_CLASS) -> DerivRelation:
    _require(params, Case.ALPHA_ZERO, tol_class)
    p, g, d, _, s = params.astuple()
    target = CheParams(p, g + 1, d + 1, 2, s + 4 * p - g - d)
    return DerivRelation(Case.ALPHA_ZERO, 0j, 0, target, _safe_div(-s, g))


def relation_sigma_zero(params: CheParams, branch: str = "1", tol_class: float = TOL_CLASS) -> DerivRelation:
    """branch "1" (s = 1) or "minus_gamma" (s = -gamma)."""
    _require(params, Case.SIGMA_ZERO, tol_class)
    p, g, d, a, _ = params.astuple()
    if branch == "1":
        s = 1 + 0j
        # u' = 2 c_2 z + ..., c_2 = 4 p alpha / (2 (1 + gamma))
        scale = _safe_div(4 * p * a, 1 + g)
    elif branch == "minus_gamma":
        if g == -1:
            raise DegenerateBranchesError("gamma = -1 makes both exponents equal to 1")
        s = -g
        scale = 1 - g
    else:
        raise ValueError(f"unknown branch {branch!r}")
    target = CheParams(p, g + 2 * s, d + 1, s + a + 1, s * (4 * p - g - d - s))
    return DerivRelation(Case.SIGMA_ZERO, s, 0, target, scale, branch)


def relation_sigma_4palpha(params: CheParams, branch: str = "1", tol_class: float = TOL_CLASS) -> DerivRelation:
    """branch "1" (s = 1) or "minus_delta" (s = -delta)."""
    _require(params, Case.SIGMA_EQ_4P_ALPHA, tol_class)
    p, g, d, a, _ = params.astuple()
    if branch == "1":
        s = 1 + 0j
        # u'(0) = c_1 = -sigma/gamma and (z-1)^1 = -1 at the origin
        scale = _safe_div(4 * p * a, g)
    elif branch == "minus_delta":
        if d == -1:
            raise DegenerateBranchesError("delta = -1 makes both exponents equal to 1")
        s = -d
        scale = 1 - d
    else:
        raise ValueError(f"unknown branch {branch!r}")
    target = CheParams(p, g + 1, d + 2 * s, 1 + s + a, 4 * p * (1 + a) - s * (s + g + d))
    return DerivRelation(Case.SIGMA_EQ_4P_ALPHA, s, 1, target, scale, branch)


def all_relations(params: CheParams, tol_class: float = TOL_CLASS) -> list[DerivRelation]:
    """Every reduction that applies, in a fixed order; empty for generic input."""
    tag = classify(params, tol_class)
    out = []
    if Case.ALPHA_ZERO in tag:
        out.append(relation_alpha_zero(params, tol_class))
    if Case.SIGMA_ZERO in tag:
        out.append(relation_sigma_zero(params, "1", tol_class))
        if params.gamma != -1:
            out.append(relation_sigma_zero(params, "minus_gamma", tol_class))
    if Case.SIGMA_EQ_4P_ALPHA in tag:
        out.append(relation_sigma_4palpha(params, "1", tol_class))
        if params.delta != -1:
            out.append(relation_sigma_4palpha(params, "minus_delta", tol_class))
    return out


def transformed_coeffs(params: CheParams, rel: DerivRelation, z: complex) -> tuple[complex, complex]:
    """Coefficients of the equation for w = u'/phi built from the derivative
    equation: a1 + 2 phi'/phi and a0 + a1 phi'/phi + phi''/phi."""
    z = complex(z)
    h = None
    if params.alpha == 0 and params.sigma == 0:
        # g == 0: pick the multiplier each reduction was derived with
        h = {
            Case.ALPHA_ZERO: -1 / z - 1 / (z - 1),
            Case.SIGMA_ZERO: -1 / (z - 1),
            Case.SIGMA_EQ_4P_ALPHA: -1 / z,
        }[rel.case]
    a1, a0 = derivative_ode_coeffs(params, z, h)
    l1, l2 = rel.phi_log_derivs(z)
    return a1 + 2 * l1, a0 + a1 * l1 + l2


def verify_relation_coeffs(params: CheParams, rel: DerivRelation, zs: Iterable[complex]) -> float:
    """Largest relative gap between the transformed derivative equation and
    the canonical equation with ``rel.target`` over the sample points."""
    worst = 0.0
    for z in zs:
        b1, b0 = transformed_coeffs(params, rel, z)
        f, g = coeff_f(rel.target, z), coeff_g(rel.target, z)
        size = max(abs(f), abs(g), abs(b1), abs(b0))
        if size == 0:
            continue
        worst = max(worst, abs(b1 - f) / size, abs(b0 - g) / size)
    return worst


def verify_relation_solutions(
    params: CheParams,
    rel: DerivRelation,
    zs: Iterable[complex],
    N: int = DEFAULT_ORDER,
) -> tuple[complex, float]:
    """Mean of r(z) = u'(z) / (phi(z) HC(target; z)) and its largest
    relative spread over ``zs``.

    The left side is HC(params) except for the s = -gamma branch, which
    tracks the exponent-(1-gamma) solution.  The s = -delta branch lives at
    z = 1 and is rejected here.
    """
    if rel.branch == "minus_delta":
        raise NotApplicableError("the s = -delta branch is only checked at coefficient level")
    if rel.branch == "minus_gamma":
        source = second_solution(params, N)
    else:
        source = heun_function(params, N)
    target = heun_function(rel.target, N)
    ratios = []
    for z in zs:
        du = source(z).d1
        ratios.append(du / (rel.prefactor(z).value * target(z).value))
    mean = sum(ratios) / len(ratios)
    if mean == 0:
        spread = max(abs(r) for r in ratios)
    else:
        spread = max(abs(r - mean) for r in ratios) / abs(mean)
    return mean, spread
