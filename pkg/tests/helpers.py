"""Sampling utilities shared by the test modules."""
import cmath

import numpy as np

from cheun import CheParams


def rand_complex(rng, re=(-1.0, 1.0), im=(-1.0, 1.0)) -> complex:
    return complex(rng.uniform(*re), rng.uniform(*im))


def rand_gamma(rng) -> complex:
    # keeps clear of the resonant values 0, -1, -2, ... and of 1, 2, ...
    return complex(rng.uniform(0.2, 1.8), rng.uniform(0.15, 0.6) * rng.choice([-1, 1]))


def generic_params(rng, **fixed) -> CheParams:
    values = {
        "p": complex(rng.uniform(0.1, 0.5), rng.uniform(-0.2, 0.2)),
        "gamma": rand_gamma(rng),
        "delta": rand_complex(rng),
        "alpha": rand_complex(rng),
        "sigma": rand_complex(rng),
    }
    values.update(fixed)
    return CheParams(**values)


def disk_points(rng, n, r_max=0.4, r_min=0.05):
    r = np.sqrt(rng.uniform(r_min**2, r_max**2, n))
    theta = rng.uniform(0, 2 * np.pi, n)
    return [complex(z) for z in r * np.exp(1j * theta)]


def plane_points(rng, n, box=1.5, keep_away=(0, 1), margin=0.15):
    """Points in a box avoiding the given singular points."""
    out = []
    while len(out) < n:
        z = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        if all(abs(z - s) > margin for s in keep_away):
            out.append(z)
    return out


def upper_points(n, r=0.35, lo=0.3, hi=2.8):
    """Deterministic points on an arc in the upper half plane."""
    return [r * cmath.exp(1j * t) for t in np.linspace(lo, hi, n)]


def upper_disk_points(rng, n, r_min=0.1, r_max=0.4, lo=0.3, hi=2.8):
    r = rng.uniform(r_min, r_max, n)
    t = rng.uniform(lo, hi, n)
    return [complex(z) for z in r * np.exp(1j * t)]


def near_real_p(rng, lo=0.1, hi=0.45):
    """p with |arg p| <= 0.1, so -4pz stays off its branch cut for
    z in the upper-half-plane samples."""
    return cmath.rect(rng.uniform(lo, hi), rng.uniform(-0.1, 0.1))


def fd(fn, z, h=1e-5):
    return (fn(z + h) - fn(z - h)) / (2 * h)
