"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that pytest prints in the
"acceptance criteria" summary section.  Run with
``pytest tests/test_acceptance.py``.
"""
import cmath
import subprocess
import sys

import numpy as np
import pytest

from cheun import (
    CheParams,
    all_relations,
    case1_family,
    case2_family,
    case3_family,
    che_residual,
    derivative_ode_coeffs,
    generic_residual,
    hc_eval,
    hyp1f1,
    mirrored_family,
    relation_alpha_zero,
    relation_sigma_4palpha,
    relation_sigma_zero,
    symmetry_map,
    taylor_oracle,
    verify_relation_coeffs,
    verify_relation_solutions,
)
from cheun import goursat
from cheun.closed_forms import proportionality
from cheun.hyper import cpow
from cheun.params import coeff_f, coeff_g

from helpers import (
    disk_points,
    generic_params,
    near_real_p,
    plane_points,
    rand_complex,
    rand_gamma,
    upper_disk_points,
    upper_points,
)

pytestmark = pytest.mark.acceptance


def _locus_draw(rng, case):
    if case == "alpha0":
        return generic_params(rng, alpha=0)
    if case == "sigma0":
        return generic_params(rng, sigma=0)
    prm = generic_params(rng)
    return prm.replace(sigma=4 * prm.p * prm.alpha)


RELATIONS = [
    ("alpha=0", "alpha0", lambda P: relation_alpha_zero(P)),
    ("sigma=0 s=1", "sigma0", lambda P: relation_sigma_zero(P, "1")),
    ("sigma=0 s=-gamma", "sigma0", lambda P: relation_sigma_zero(P, "minus_gamma")),
    ("sigma=4p*alpha s=1", "s4pa", lambda P: relation_sigma_4palpha(P, "1")),
    ("sigma=4p*alpha s=-delta", "s4pa", lambda P: relation_sigma_4palpha(P, "minus_delta")),
]


def test_criterion_1_coefficient_identity(rng, report):
    worst = {}
    for label, case, build in RELATIONS:
        dev = 0.0
        for _ in range(50):
            prm = _locus_draw(rng, case)
            zs = plane_points(rng, 50)
            dev = max(dev, verify_relation_coeffs(prm, build(prm), zs))
        worst[label] = dev
    ok = all(v <= 1e-12 for v in worst.values())
    report("1 coefficient-level reduction", ok,
           "max deviation " + ", ".join(f"{k}: {v:.1e}" for k, v in worst.items()) + " (tol 1e-12)")
    assert ok, worst


def test_criterion_2_solution_identity(rng, report):
    worst = {}
    for label, case, build in RELATIONS[:4]:
        dev = 0.0
        for _ in range(20):
            prm = _locus_draw(rng, case)
            _, spread = verify_relation_solutions(prm, build(prm), disk_points(rng, 10, 0.4))
            dev = max(dev, spread)
        worst[label] = dev
    ok = all(v <= 1e-8 for v in worst.values())
    report("2 solution-level reduction", ok,
           "max ratio spread " + ", ".join(f"{k}: {v:.1e}" for k, v in worst.items()) + " (tol 1e-8)")
    assert ok, worst


def test_criterion_3_extra_singularity(rng, report):
    smallest = np.inf
    emitted = 0
    for _ in range(20):
        while True:
            prm = generic_params(rng)
            zs_ = prm.sigma / (4 * prm.p * prm.alpha)
            if abs(zs_) > 0.05 and abs(zs_ - 1) > 0.05:
                break
        for theta in np.linspace(0, 2 * np.pi, 8, endpoint=False):
            a1, a0 = derivative_ode_coeffs(prm, zs_ + 1e-7 * cmath.exp(1j * theta))
            smallest = min(smallest, max(abs(a1), abs(a0)))
        emitted += len(all_relations(prm))
    ok = smallest > 1e6 and emitted == 0
    report("3 extra singularity", ok,
           f"min |coeffs| at distance 1e-7: {smallest:.2e} (need > 1e6); relations emitted: {emitted}")
    assert ok


def _closed_form_draws(rng, first, n=10):
    draws = [first]
    for _ in range(n):
        draws.append((near_real_p(rng), complex(rng.uniform(0.2, 1.6), rng.uniform(-0.5, 0.5))))
    return draws


def test_criterion_4_closed_forms(rng, report):
    u_worst = w_worst = 0.0
    for case, build, u_idx, first in [
        (1, case1_family, (0, 1), (0.25, 0.5)),
        (2, case2_family, (1,), (0.2, 0.5)),
        (3, case3_family, (1,), (0.2, 0.5)),
    ]:
        for p, par in _closed_form_draws(rng, first):
            fam = build(p, par)
            zs = upper_disk_points(rng, 20)
            for i in u_idx:
                u_worst = max(u_worst, che_residual(fam.locus, fam.u_branches[i], zs).max_residual)
            a1 = lambda z: fam.reduced_coeffs(z)[0]
            a0 = lambda z: fam.reduced_coeffs(z)[1]
            for w in fam.w_branches:
                w_worst = max(w_worst, generic_residual(a1, a0, w, zs).max_residual)
    ok = u_worst <= 1e-9 and w_worst <= 1e-10
    report("4 closed forms", ok,
           f"max u residual {u_worst:.1e} (tol 1e-9); max w residual {w_worst:.1e} (tol 1e-10)")
    assert ok


def test_criterion_5_symmetry(rng, report):
    coeff_dev = prop_dev = 0.0
    draws = [(0.2, 0.5)] + [(near_real_p(rng), rand_complex(rng, (0.2, 1.5), (-0.5, 0.5))) for _ in range(5)]
    for p, a in draws:
        c2 = case2_family(p, a)
        c3 = case3_family(-p, a)
        image = mirrored_family(c2)
        # parameter map and equation coefficients
        mapped = symmetry_map(c2.locus)
        coeff_dev = max(coeff_dev, max(abs(x - y) for x, y in zip(mapped.astuple(), c3.locus.astuple())))
        for z in plane_points(rng, 20):
            pairs = [
                (coeff_f(c3.locus, z), -coeff_f(c2.locus, 1 - z)),
                (coeff_g(c3.locus, z), coeff_g(c2.locus, 1 - z)),
                (c3.reduced_coeffs(z)[0], -c2.reduced_coeffs(1 - z)[0]),
                (c3.reduced_coeffs(z)[1], c2.reduced_coeffs(1 - z)[1]),
            ]
            size = max(max(abs(x), abs(y)) for x, y in pairs)
            coeff_dev = max(coeff_dev, max(abs(x - y) for x, y in pairs) / size)
        zs = upper_points(12)
        for mine, theirs in zip(c3.u_branches + c3.w_branches, image.u_branches + image.w_branches):
            prop_dev = max(prop_dev, proportionality(mine, theirs, zs)[1])
    ok = coeff_dev <= 1e-12 and prop_dev <= 1e-10
    report("5 z -> 1-z symmetry", ok,
           f"coefficient deviation {coeff_dev:.1e} (tol 1e-12); proportionality spread {prop_dev:.1e} (tol 1e-10)")
    assert ok


def _sigma0_draw(rng, p_scale=0.5):
    prm = generic_params(rng, sigma=0)
    return prm.replace(p=cmath.rect(rng.uniform(0.05, p_scale), rng.uniform(-np.pi, np.pi)))


def test_criterion_6_goursat_machinery(rng, report):
    r0 = rec = deriv = 0.0
    for k in range(100):
        prm = _sigma0_draw(rng)
        exp = goursat.init_expansion(prm)
        r0 = max(r0, abs(goursat.rqp(0, exp)[0]))
        exp = goursat.compute_coefficients(exp, 12)
        rec = max(rec, max(goursat.recurrence_residuals(exp)))
        if k < 20:
            for z in disk_points(rng, 10, 0.4):
                du = goursat.eval_u_core(exp, z).d1
                rhs = (1 - prm.gamma) * cpow(z, -prm.gamma) * goursat.eval_w(exp, z).value
                deriv = max(deriv, abs(du - rhs) / abs(rhs))

    ok = r0 == 0 and rec <= 1e-12 and deriv <= 1e-9
    report("6a Goursat recurrence and derivative identity", ok,
           f"max|R_0| {r0:.1e}; recurrence residual {rec:.1e} (tol 1e-12); "
           f"d(u-C0)/dz gap {deriv:.1e} (tol 1e-9)")
    assert ok


def test_criterion_6_partial_sum_decrease(report):
    """Residual of the w equation for partial sums with 6 and 12 terms.

    Known to fail: for a non-terminating series the residual of a partial
    sum tends to a nonzero boundary term (see the decisions ledger).
    """
    prm = CheParams(0.3, 0.7, 0.4, 1.1, 0)
    full = goursat.compute_coefficients(goursat.init_expansion(prm), 12)
    a1 = lambda z: goursat.reduced_coeffs(prm, z)[0]
    a0 = lambda z: goursat.reduced_coeffs(prm, z)[1]
    zs = [0.3, 0.2 + 0.2j, -0.25 + 0.1j]
    res = {}
    for n in (6, 12):
        part = goursat.truncated(full, n + 1)
        res[n] = generic_residual(a1, a0, lambda z: goursat.eval_w(part, z), zs).max_residual
    decrease = res[6] / res[12]
    ok = decrease >= 10
    report("6b Goursat partial-sum residual decrease", ok,
           f"w residual N=6 {res[6]:.2e}, N=12 {res[12]:.2e}, decrease x{decrease:.2f} (need >= 10)")
    assert ok, res


def test_criterion_7_termination(rng, report):
    degree_ok = True
    roots_total = {}
    coeff_worst = res_worst = 0.0
    for N in (1, 2, 3):
        gamma = rand_gamma(rng)
        for branch, free in [
            (goursat.DELTA_BRANCH, rand_complex(rng, (0.2, 1.5), (-0.5, 0.5))),
            (goursat.ALPHA_GAMMA_BRANCH, rand_complex(rng, (0.2, 1.5), (-0.5, 0.5))),
        ]:
            case = goursat.termination_case(N, branch, gamma, free)
            degree_ok &= case.polynomial.degree() == N and case.polynomial.coef[-1] != 0
            roots_total[N] = roots_total.get(N, 0) + len(case.p_roots)
            for root in case.p_roots:
                exp = goursat.terminated_expansion(case, root)
                a = exp.coeffs
                scale = max(abs(c) for c in a)
                coeff_worst = max(coeff_worst, abs(a[N]) / scale, abs(a[N + 1]) / scale)
                trunc = goursat.truncated(exp, N)
                zs = disk_points(rng, 10, 0.3)
                res_worst = max(res_worst, che_residual(trunc.params, lambda z: goursat.eval_u(trunc, z), zs).max_residual)

    gamma, alpha = 0.7 + 0.2j, 0.4 - 0.3j
    root = goursat.termination_case(1, goursat.DELTA_BRANCH, gamma, alpha).p_roots[0]
    analytic = abs(root - (-gamma / (4 * (1 + alpha))))

    counts_ok = all(roots_total[N] == 2 * N for N in (1, 2, 3))
    ok = degree_ok and counts_ok and coeff_worst <= 1e-8 and res_worst <= 1e-8 and analytic <= 1e-12
    report("7 termination", ok,
           f"degrees exact: {degree_ok}; roots per N over both branches {roots_total}; "
           f"max |a_N|,|a_N+1| (relative) {coeff_worst:.1e}; residual with C0=0 {res_worst:.1e} (tol 1e-8); "
           f"N=1 analytic root gap {analytic:.1e} (tol 1e-12)")
    assert ok


def test_criterion_8_oracles(rng, report):
    oracle = 0.0
    for _ in range(20):
        prm = generic_params(rng)
        for z in disk_points(rng, 25, 0.45, r_min=0.15):
            z0 = 0.1 * z / abs(z)
            start = hc_eval(prm, z0)
            u, du = taylor_oracle(prm, z0, start.value, start.d1, z)
            ref = hc_eval(prm, z)
            oracle = max(oracle, abs(u - ref.value) / abs(u), abs(du - ref.d1) / max(abs(du), abs(u)))

    contiguous = 0.0
    for _ in range(50):
        a0, g0 = rand_complex(rng, (-2, 2)), rand_complex(rng, (0.5, 3))
        n = int(rng.integers(1, 6))
        s0 = rand_complex(rng)
        z = rand_complex(rng, (-1, 1), (-1, 1))
        w = lambda k, t: hyp1f1(a0 + k, g0 + k, s0 * t).value
        an, gn = a0 + n, g0 + n
        # w_n' from values only (five-point stencil)
        h = 1e-3
        dwn = (-w(n, z + 2 * h) + 8 * w(n, z + h) - 8 * w(n, z - h) + w(n, z - 2 * h)) / (12 * h)
        lhs1, rhs1 = dwn, s0 * an / gn * w(n + 1, z)
        lhs2, rhs2 = z * (dwn - s0 * w(n, z)), (gn - 1) * (w(n - 1, z) - w(n, z))
        size = max(abs(lhs1), abs(rhs1), abs(w(n, z)))
        contiguous = max(contiguous, abs(lhs1 - rhs1) / size,
                         abs(lhs2 - rhs2) / max(abs(lhs2), abs(rhs2), abs(z * s0 * w(n, z))))
    ok = oracle <= 1e-9 and contiguous <= 1e-10
    report("8 oracle cross-validation", ok,
           f"series vs Taylor integrator {oracle:.1e} (tol 1e-9); 1F1 contiguous relations {contiguous:.1e} (tol 1e-10)")
    assert ok


CLI_RUNS = [
    ["eval", "--p", "0.3,0.1", "--gamma", "0.8", "--delta", "0.6", "--alpha", "0.4", "--sigma", "0.2", "--disk", "0.4:6"],
    ["relate", "--p", "0.3", "--gamma", "0.8,0.2", "--delta", "0.6", "--alpha", "0.4", "--sigma", "0", "--disk", "0.4:5"],
    ["verify", "--p", "0.3", "--gamma", "0.8", "--delta", "0.6", "--alpha", "0.4", "--sigma", "0.2", "--disk", "0.45:5"],
    ["closed-form", "--case", "2", "--p", "0.2", "--alpha", "0.5", "--disk", "0.4:5", "--format", "csv"],
    ["goursat", "--p", "0.3", "--gamma", "0.7", "--delta", "0.4", "--alpha", "1.1", "--disk", "0.4:4"],
    ["terminate", "--order", "2", "--gamma", "0.7,0.2", "--alpha", "0.4", "--delta", "0.3", "--seed", "3"],
]

CLI_FAILURES = [
    (["eval", "--z", "0.9"], 2),                                    # outside the series disk
    (["terminate", "--order", "2", "--gamma", "3", "--delta", "1",
      "--branch", "alpha_minus_gamma"], 3),                         # R_2 = 0 in the recurrence
    (["eval", "--p", "0", "--z", "0.1"], 2),                        # p = 0 rejected
]


def _cli(args):
    return subprocess.run([sys.executable, "-m", "cheun", *args], capture_output=True)


def test_criterion_9_cli(report):
    identical = []
    for args in CLI_RUNS:
        first, second = _cli(args), _cli(args)
        identical.append(first.returncode == 0 and first.stdout == second.stdout and first.stdout != b"")
    codes = [_cli(args).returncode for args, _ in CLI_FAILURES]
    expected = [code for _, code in CLI_FAILURES]
    ok = all(identical) and codes == expected
    report("9 CLI determinism", ok,
           f"byte-identical reruns {sum(identical)}/{len(identical)}; failure exit codes {codes} (expected {expected})")
    assert ok
