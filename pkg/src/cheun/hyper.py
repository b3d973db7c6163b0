"""Series evaluation of the classical functions the solutions are built from.

Everything here is a plain power series summed until the terms stagnate
below a relative tolerance.  There are no asymptotic expansions, so the
routines are meant for moderate arguments (|x| up to about 8).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy import special

from .errors import (
    BranchCutError,
    NoConvergenceError,
    PoleParameterError,
    ZeroBaseError,
)
from .jets import Jet

EULER_GAMMA = 0.57721566490153286061


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-14
    max_terms: int = 10000
    stagnation_window: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 10:
            raise ValueError("max_terms must be at least 10")
        if self.stagnation_window < 1:
            raise ValueError("stagnation_window must be positive")


DEFAULT_CONTROL = SeriesControl()


def _is_nonpositive_integer(c: complex) -> bool:
    return c.imag == 0 and c.real <= 0 and c.real == round(c.real)


def _csum(terms) -> complex:
    # exactly rounded per component
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def pfq_series(upper, lower, x, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Sum the generalized hypergeometric series with the given parameters."""
    upper = [complex(a) for a in upper]
    lower = [complex(b) for b in lower]
    x = complex(x)
    term = 1 + 0j
    partial = 1 + 0j
    terms = [term]
    quiet = 0
    for k in range(ctl.max_terms):
        num = 1 + 0j
        for a in upper:
            num *= a + k
        if num == 0:
            break
        den = 1 + 0j
        for b in lower:
            den *= b + k
        if den == 0:
            raise PoleParameterError(f"lower parameter in {lower} hits a pole at term {k + 1}")
        term *= num / den * x / (k + 1)
        terms.append(term)
        partial += term
        if abs(term) <= ctl.rel_tol * abs(partial):
            quiet += 1
            if quiet >= ctl.stagnation_window:
                break
        else:
            quiet = 0
    else:
        raise NoConvergenceError(f"series did not converge in {ctl.max_terms} terms")
    return _csum(terms)


def pfq_jet(upper, lower, x, ctl: SeriesControl = DEFAULT_CONTROL) -> Jet:
    """Value and first two x-derivatives, using the parameter-shift rule
    d/dx F(a; b; x) = (prod a / prod b) F(a+1; b+1; x)."""
    upper = [complex(a) for a in upper]
    lower = [complex(b) for b in lower]
    value = pfq_series(upper, lower, x, ctl)
    derivs = []
    factor = 1 + 0j
    for shift in (0, 1):
        for a in upper:
            factor *= a + shift
        if factor == 0:
            derivs.append(0j)
            continue
        for b in lower:
            factor /= b + shift
        derivs.append(factor * pfq_series(
            [a + shift + 1 for a in upper], [b + shift + 1 for b in lower], x, ctl))
    return Jet(value, derivs[0], derivs[1] if len(derivs) > 1 else 0j)


def hyp1f1(a, b, x, ctl: SeriesControl = DEFAULT_CONTROL) -> Jet:
    """Kummer's function 1F1(a; b; x) with its first two derivatives in x."""
    return pfq_jet([a], [b], x, ctl)


def hyp2f2(a1, a2, b1, b2, x, ctl: SeriesControl = DEFAULT_CONTROL) -> Jet:
    """Goursat's 2F2(a1, a2; b1, b2; x) with its first two derivatives."""
    return pfq_jet([a1, a2], [b1, b2], x, ctl)


def laguerre(n, a, x, ctl: SeriesControl = DEFAULT_CONTROL) -> Jet:
    """Laguerre function normalised to 1 at the origin: 1F1(-n; a+1; x).

    This differs from the classical L_n^(a) by the binomial factor
    C(n+a, n); only the shape matters wherever it is used here.
    """
    return hyp1f1(-complex(n), complex(a) + 1, x, ctl)


def cpow(base, s) -> complex:
    """Principal power exp(s Log base) with arg(base) in (-pi, pi]."""
    base = complex(base)
    s = complex(s)
    if base == 0:
        if s.real > 0:
            return 0j
        raise ZeroBaseError("0 raised to a power with nonpositive real part")
    if s == 0:
        return 1 + 0j
    if s == 1:
        return base
    if base.imag == 0 and base.real < 0:
        # -0.0 imaginary part would select arg = -pi
        log = complex(math.log(-base.real), math.pi)
    else:
        log = cmath.log(base)
    return cmath.exp(s * log)


def power_jet(base: Jet, s) -> Jet:
    """Jet of b(z)**s on the principal branch."""
    s = complex(s)
    b = base.value
    if b == 0:
        raise ZeroBaseError("power jet evaluated at a zero of its base")
    v = cpow(b, s)
    r1 = base.d1 / b
    return Jet(v, s * v * r1, s * v * ((s - 1) * r1 * r1 + base.d2 / b))


# -- incomplete gamma ------------------------------------------------------

def _on_branch_cut(x: complex) -> bool:
    return x.real < 0 and abs(x.imag) <= 1e-12 * abs(x)


def _lower_gamma_series(a: complex, x: complex, ctl: SeriesControl) -> complex:
    # gamma(a, x) = x^a sum_k (-x)^k / (k! (a + k))
    term = 1 + 0j
    terms = [1 / a]
    for k in range(1, ctl.max_terms):
        term *= -x / k
        t = term / (a + k)
        terms.append(t)
        if abs(t) <= ctl.rel_tol * abs(terms[0]) and abs(term) < 1:
            break
    else:
        raise NoConvergenceError("lower incomplete gamma series did not converge")
    return cpow(x, a) * _csum(terms)


def _exp1_series(x: complex, ctl: SeriesControl) -> complex:
    term = 1 + 0j
    terms = []
    for k in range(1, ctl.max_terms):
        term *= -x / k
        terms.append(term / k)
        if abs(term) <= ctl.rel_tol:
            break
    else:
        raise NoConvergenceError("E1 series did not converge")
    return -EULER_GAMMA - cmath.log(x) - _csum(terms)


def _upper_gamma_cf(a: complex, x: complex, ctl: SeriesControl) -> complex:
    # Legendre continued fraction, modified Lentz
    tiny = 1e-300
    b = x + 1 - a
    c = 1 / tiny
    d = 1 / b
    h = d
    for i in range(1, ctl.max_terms):
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if d == 0:
            d = tiny
        c = b + an / c
        if c == 0:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) < ctl.rel_tol:
            return cmath.exp(-x) * cpow(x, a) * h
    raise NoConvergenceError("incomplete gamma continued fraction did not converge")


def upper_gamma(a, x, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Upper incomplete gamma function on the principal branch of x."""
    a = complex(a)
    x = complex(x)
    positive_integer = a.imag == 0 and a.real > 0 and a.real == round(a.real)
    if x == 0:
        if a.real > 0:
            return complex(special.gamma(a))
        raise ZeroBaseError("upper gamma diverges at x = 0 for Re(a) <= 0")
    if not positive_integer and _on_branch_cut(x):
        raise BranchCutError(f"x = {x} lies on the branch cut of x**a")
    if abs(x) > max(2.0, a.real + 1):
        return _upper_gamma_cf(a, x, ctl)
    if _is_nonpositive_integer(a):
        # climb down from E1 = Gamma(0, x)
        g = _exp1_series(x, ctl)
        ex = cmath.exp(-x)
        for m in range(1, int(-a.real) + 1):
            g = (g - cpow(x, -m) * ex) / (-m)
        return g
    if a.real <= 0:
        m = int(math.floor(-a.real)) + 1
        g = upper_gamma(a + m, x, ctl)
        ex = cmath.exp(-x)
        for j in range(m, 0, -1):
            b = a + j - 1
            g = (g - cpow(x, b) * ex) / b
        return g
    return complex(special.gamma(a)) - _lower_gamma_series(a, x, ctl)


__all__ = [
    "SeriesControl",
    "DEFAULT_CONTROL",
    "pfq_series",
    "pfq_jet",
    "hyp1f1",
    "hyp2f2",
    "laguerre",
    "cpow",
    "power_jet",
    "upper_gamma",
]

