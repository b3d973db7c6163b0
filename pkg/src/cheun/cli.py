"""Command-line interface.

Complex values are given as ``re,im`` (or a bare real); a negative value
such as ``--sigma -1,0`` is glued to its flag before parsing, so argparse
does not mistake it for an option.
Output is JSON lines by default, with complex numbers as {"re", "im"}
objects; ``--format csv`` flattens the same records into columns.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from typing import Iterable

import numpy as np

from . import closed_forms, goursat
from .errors import (
    DegenerateGammaError,
    InputError,
    NumericalError,
    OutOfDiskError,
    ResonantGammaError,
)
from .frobenius import DEFAULT_ORDER, R_MAX, frobenius_coefficients
from .params import CheParams
from .relations import all_relations, classify, verify_relation_coeffs, verify_relation_solutions
from .verify import che_residual, generic_residual, taylor_oracle


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")


_NUMERIC = re.compile(r"^-(\d|\.\d)[\d.eE+-]*(,[-+]?[\d.eE+-]+)?$")


def _glue_negative_values(argv: list[str]) -> list[str]:
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NUMERIC.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def parse_disk(text: str) -> tuple[float, int]:
    try:
        r, n = text.split(":")
        return float(r), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected R:COUNT but got {text!r}") from None


def sample_disk(radius: float, count: int, seed: int) -> list[complex]:
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    theta = rng.uniform(0.0, 2 * np.pi, count)
    return [complex(z) for z in r * np.exp(1j * theta)]


# -- serialisation ---------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, complex):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, float):
        return None if math.isnan(obj) else obj
    if isinstance(obj, (np.floating, np.complexfloating)):
        return _jsonable(complex(obj) if np.iscomplexobj(obj) else float(obj))
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _flatten(obj, prefix="", out=None) -> dict:
    out = {} if out is None else out
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(v, f"{prefix}.{k}" if prefix else str(k), out)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(v, f"{prefix}.{i}", out)
    else:
        out[prefix] = "" if obj is None else obj
    return out


def write_records(records: Iterable[dict], fmt: str, stream) -> None:
    records = [_jsonable(r) for r in records]
    if fmt == "json":
        for r in records:
            stream.write(json.dumps(r) + "\n")
        return
    rows = [_flatten(r) for r in records]
    header: list[str] = []
    for row in rows:
        header.extend(k for k in row if k not in header)
    writer = csv.DictWriter(stream, fieldnames=header, restval="", lineterminator="\r\n")
    writer.writeheader()
    writer.writerows(rows)


# -- commands --------------------------------------------------------------

def _params(args) -> CheParams:
    return CheParams(args.p, args.gamma, args.delta, args.alpha, args.sigma)


def _points(args, default_radius: float = 0.4, default_count: int = 10) -> list[complex]:
    if args.z:
        return list(args.z)
    radius, count = args.disk if args.disk else (default_radius, default_count)
    return sample_disk(radius, count, args.seed)


def _params_record(params: CheParams) -> dict:
    return dict(zip(("p", "gamma", "delta", "alpha", "sigma"), params.astuple()))


def cmd_eval(args):
    params = _params(args)
    exponent = 0 if args.solution == "hc" else 1 - params.gamma
    series = frobenius_coefficients(params, exponent, args.order)
    for z in _points(args):
        if abs(z) > args.r_max:
            raise OutOfDiskError(f"|z| = {abs(z):.6g} exceeds r_max = {args.r_max}")
        u, du, d2u = series(z)
        yield {"z": z, "u": u, "du": du, "d2u": d2u}


def cmd_relate(args):
    params = _params(args)
    zs = _points(args)
    relations = []
    for rel in all_relations(params, args.tol):
        ratio_dev = note = None
        if rel.branch == "minus_delta":
            note = "s = -delta branch is checked at coefficient level only"
        else:
            try:
                _, ratio_dev = verify_relation_solutions(params, rel, zs, args.order)
            except ResonantGammaError as exc:
                note = f"solution check skipped: {exc}"
        relations.append({
            "case": rel.case.name,
            "branch": rel.branch or "0",
            "s": rel.s,
            "prefactor": {0: "z^s", 1: "(z-1)^s"}[rel.prefactor_center] if rel.s != 0 else "1",
            "target_params": _params_record(rel.target),
            "scale": rel.scale,
            "coeff_deviation": verify_relation_coeffs(params, rel, zs),
            "ratio_deviation": ratio_dev,
            "note": note,
        })
    tag = classify(params, args.tol)
    cases = [c.name for c in type(tag) if c in tag and c.value]
    yield {"cases": cases, "relations": relations}


def cmd_verify(args):
    params = _params(args)
    series = frobenius_coefficients(params, 0, args.order)
    zs = _points(args)
    worst_res = worst_oracle = 0.0
    for z in zs:
        res = che_residual(params, series, [z]).max_residual
        oracle = None
        if abs(z) > 0.1:
            z0 = 0.1 * z / abs(z)
            start = series(z0)
            u, du = taylor_oracle(params, z0, start.value, start.d1, z)
            ref = series(z)
            oracle = max(abs(u - ref.value) / max(abs(u), 1e-300), abs(du - ref.d1) / max(abs(du), 1e-300))
            worst_oracle = max(worst_oracle, oracle)
        worst_res = max(worst_res, res)
        yield {"z": z, "residual": res, "oracle_error": oracle}
    yield {"summary": {"max_residual": worst_res, "max_oracle_error": worst_oracle, "points": len(zs)}}


def cmd_closed_form(args):
    if args.case == 1:
        fam = closed_forms.case1_family(args.p, args.gamma)
    elif args.case == 2:
        fam = closed_forms.case2_family(args.p, args.alpha)
    else:
        fam = closed_forms.case3_family(args.p, args.alpha)
    yield {"case": fam.case, "locus": _params_record(fam.locus), "constants": fam.constants}
    a1 = lambda z: fam.reduced_coeffs(z)[0]
    a0 = lambda z: fam.reduced_coeffs(z)[1]
    for z in _points(args):
        rec = {"z": z}
        for i, u in enumerate(fam.u_branches, 1):
            rec[f"u{i}"] = u(z).value
            rec[f"u{i}_residual"] = che_residual(fam.locus, u, [z]).max_residual
        for i, w in enumerate(fam.w_branches, 1):
            rec[f"w{i}"] = w(z).value
            rec[f"w{i}_residual"] = generic_residual(a1, a0, w, [z]).max_residual
        yield rec


def cmd_goursat(args):
    params = _params(args)
    exp = goursat.compute_coefficients(goursat.init_expansion(params, args.order), args.order)
    c0 = goursat.determine_C0(exp, args.z_star) if params.alpha != 0 else None
    exp = goursat.GoursatExpansion(exp.params, exp.alpha0, exp.gamma0, exp.s0, exp.coeffs, c0)
    yield {
        "alpha0": exp.alpha0, "gamma0": exp.gamma0, "s0": exp.s0,
        "coeffs": list(exp.coeffs),
        "recurrence_residual": max(goursat.recurrence_residuals(exp), default=0.0),
        "C0": c0,
    }
    a1 = lambda z: goursat.reduced_coeffs(params, z)[0]
    a0 = lambda z: goursat.reduced_coeffs(params, z)[1]
    for z in _points(args):
        w = goursat.eval_w(exp, z)
        rec = {"z": z, "w": w.value,
               "w_residual": generic_residual(a1, a0, lambda t: goursat.eval_w(exp, t), [z]).max_residual}
        if c0 is not None:
            rec["u"] = goursat.eval_u(exp, z).value
        yield rec


def cmd_terminate(args):
    branches = [goursat.DELTA_BRANCH, goursat.ALPHA_GAMMA_BRANCH] if args.branch == "both" else [args.branch]
    zs = _points(args, 0.3, 5)
    for branch in branches:
        free = args.alpha if branch == goursat.DELTA_BRANCH else args.delta
        case = goursat.termination_case(args.order, branch, args.gamma, free)
        for root in case.p_roots:
            rec = {
                "N": case.N, "branch": branch,
                "gamma": case.gamma, "delta": case.delta, "alpha": case.alpha,
                "polynomial": [complex(c) for c in case.polynomial.coef],
                "p_root": root, "a_N": None, "a_N1": None, "residual": None, "note": None,
            }
            if abs(root) <= 1e-12:
                rec["note"] = "p = 0 is excluded from the confluent Heun class"
                yield rec
                continue
            exp = goursat.terminated_expansion(case, root)
            scale = max(abs(c) for c in exp.coeffs)
            rec["a_N"] = abs(exp.coeffs[case.N]) / scale
            rec["a_N1"] = abs(exp.coeffs[case.N + 1]) / scale
            trunc = goursat.truncated(exp, case.N)
            try:
                rec["residual"] = che_residual(
                    trunc.params, lambda z: goursat.eval_u(trunc, z), zs).max_residual
            except DegenerateGammaError as exc:
                rec["note"] = f"u not formed: {exc}"
            yield rec


COMMANDS = {
    "eval": cmd_eval,
    "relate": cmd_relate,
    "verify": cmd_verify,
    "closed-form": cmd_closed_form,
    "goursat": cmd_goursat,
    "terminate": cmd_terminate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    defaults = {"p": 0.25, "gamma": 1.0, "delta": 1.0, "alpha": 0.0, "sigma": 0.0}
    for name, default in defaults.items():
        common.add_argument(f"--{name}", type=parse_complex, default=complex(default), metavar="RE,IM",
                            help=f"default {default}")
    common.add_argument("--z", type=parse_complex, action="append", metavar="RE,IM",
                        help="evaluation point (repeatable)")
    common.add_argument("--disk", type=parse_disk, metavar="R:COUNT",
                        help="sample COUNT points uniformly in |z| <= R")
    common.add_argument("--order", type=int, default=None, help="series order N")
    common.add_argument("--tol", type=float, default=1e-12, help="case classification tolerance")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--r-max", type=float, default=R_MAX)

    parser = argparse.ArgumentParser(prog="cheun", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    ev = sub.add_parser("eval", parents=[common], help="evaluate HC or the second local solution")
    ev.add_argument("--solution", choices=("hc", "second"), default="hc")
    sub.add_parser("relate", parents=[common], help="list derivative reductions")
    sub.add_parser("verify", parents=[common], help="residual and Taylor-oracle check of HC")
    cf = sub.add_parser("closed-form", parents=[common], help="closed-form solution families")
    cf.add_argument("--case", type=int, choices=(1, 2, 3), required=True)
    gs = sub.add_parser("goursat", parents=[common], help="Kummer/Goursat expansion (sigma = 0)")
    gs.add_argument("--z-star", type=parse_complex, default=complex(0.25, 0.1))
    te = sub.add_parser("terminate", parents=[common], help="series termination values of p")
    te.add_argument("--branch", choices=(goursat.DELTA_BRANCH, goursat.ALPHA_GAMMA_BRANCH, "both"),
                    default="both")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    if args.order is None:
        args.order = {"goursat": 12, "terminate": 1}.get(args.command, DEFAULT_ORDER)
    try:
        records = list(COMMANDS[args.command](args))
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    write_records(records, args.format, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
