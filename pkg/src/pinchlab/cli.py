"""Command-line front end.

Exit codes: 0 all checks passed, 1 at least one mathematical violation
(report still written), 2 usage or internal error.  Reports are appended to
the output directory as timestamped JSON and never overwritten.  The default
seed comes from PINCHLAB_SEED; a JSON config file can mirror any flag, with
flags taking precedence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .ftensor import (
    FCoefficients,
    CLAIMED_POINT,
    expansion_campaign,
    grad_q2,
    optimize_q2,
    q2,
    q2_claimed_value,
)
from .minsec import DegenerateEpsError, SearchOptions
from .models import (
    default_models,
    literature_table,
    model,
    model_names,
    pinching_threshold,
    soliton_identity_check,
)
from .profiles import CampaignConfig, mc_campaign
from .reports import emit, persist, report_digest
from .scalars import RATIONAL, FLOAT, parse_scalar, scalar_to_json

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _fraction(text):
    return parse_scalar(text)


def build_parser():
    p = argparse.ArgumentParser(prog="pinchlab",
                                description="curvature-pinching verification toolkit")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int,
                        default=int(os.environ.get("PINCHLAB_SEED", "0")))
    common.add_argument("--arithmetic", choices=[RATIONAL, FLOAT], default=RATIONAL)
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for interface compatibility; campaigns "
                             "are vectorized in-process")
    common.add_argument("--out", default=None, help="report output directory")
    common.add_argument("--config", default=None,
                        help="JSON file mirroring flags; flags take precedence")

    sub = p.add_subparsers(dest="command", required=True)

    ve = sub.add_parser("verify-estimates", parents=[common],
                        help="Monte Carlo verification of both estimates")
    ve.add_argument("--n", type=int, action="append", default=None)
    ve.add_argument("--eps", type=_fraction, action="append", default=None)
    ve.add_argument("--s", type=_fraction, action="append", default=None)
    ve.add_argument("--count", type=int, default=1000)
    ve.add_argument("--kind", choices=["profile", "tensor"], default="profile")
    ve.add_argument("--distribution",
                    choices=["half-normal", "uniform", "sparse"],
                    default="half-normal")
    ve.add_argument("--corrupt-rhs1", type=float, default=0.0,
                    help="test fixture: perturb the estimate-1 coefficient")

    oq = sub.add_parser("optimize-q2", parents=[common],
                        help="global maximization of the Q2 functional")
    oq.add_argument("--eps", type=_fraction, action="append", default=None)
    oq.add_argument("--grid", type=int, default=41)
    oq.add_argument("--box", type=float, default=10.0)
    oq.add_argument("--tol", type=float, default=1e-12)

    ef = sub.add_parser("expand-fsq", parents=[common],
                        help="exact |F|^2 direct-vs-formula campaign")
    ef.add_argument("--models", type=int, default=1000)
    ef.add_argument("--coeffs", type=int, default=100)

    mo = sub.add_parser("model", parents=[common],
                        help="threshold report and identities for one model")
    mo.add_argument("name", choices=model_names())
    mo.add_argument("--eps", type=_fraction, default=Fraction(1, 24))

    ms = sub.add_parser("models", parents=[common],
                        help="literature comparison table over all models")
    ms.add_argument("--table", action="store_true")
    ms.add_argument("--format", choices=["json", "csv", "text"], default="text")

    sub.add_parser("identities", parents=[common],
                   help="soliton identity residuals on every model")
    sub.add_parser("all", parents=[common],
                   help="run every check with default settings")
    return p


def _apply_config_file(args):
    if not args.config:
        return args
    with open(args.config) as fh:
        data = json.load(fh)
    for key, value in data.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            continue
        # flags explicitly given on the command line win; detect by comparing
        # against a fresh parse of just the subcommand
        if getattr(args, attr) == _bare_default(args.command, attr):
            if attr in ("eps", "s") and isinstance(value, list):
                value = [parse_scalar(v) for v in value]
            elif attr == "eps" and not isinstance(value, list):
                value = parse_scalar(value)
            setattr(args, attr, value)
    return args


def _bare_default(command, attr):
    bare = build_parser().parse_args([command] + (["sphere"] if command == "model" else []))
    return getattr(bare, attr, None)


def _finish(report, args, stem):
    payload = dict(report)
    payload["toolVersion"] = __version__
    payload["digest"] = report_digest(report)
    out = emit(payload, "json")
    sys.stdout.write(out.decode())
    if args.out:
        persist(payload, args.out, stem=stem)
    violated = bool(payload.get("violations"))
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_verify_estimates(args):
    dims = tuple(args.n or [4])
    eps_list = tuple(args.eps if args.eps is not None else [Fraction(1, 24)])
    s_list = tuple(args.s if args.s is not None else
                   [Fraction(0), Fraction(1, 2), Fraction(1)])
    for n in dims:
        for eps in eps_list:
            if float(eps) * n * (n - 1) >= 1:
                raise DegenerateEpsError(
                    f"eps = {eps} at or beyond the degenerate bound 1/{n*(n-1)} "
                    f"for n = {n}: the modified scalar curvature "
                    "(1 - n(n-1)*eps)*R vanishes there")
    config = CampaignConfig(
        kind=args.kind, dims=dims, eps_list=eps_list, s_list=s_list,
        count=args.count, seed=args.seed, mode=args.arithmetic,
        distribution=args.distribution, coeff_delta=args.corrupt_rhs1)
    report = mc_campaign(config)
    return _finish(report, args, "verify-estimates")


def cmd_optimize_q2(args):
    eps_list = args.eps if args.eps is not None else [Fraction(1, 24)]
    results, violations = [], []
    for eps in eps_list:
        arg, value = optimize_q2(float(eps), grid=args.grid, box=args.box,
                                 tol=args.tol)
        claimed = q2_claimed_value(Fraction(eps))
        delta = value - float(claimed)
        gnorm = float(np.abs(grad_q2(arg, float(eps))).max())
        entry = {
            "eps": scalar_to_json(Fraction(eps)),
            "argmax": arg.as_dict(),
            "value": value,
            "gradNorm": gnorm,
            "claimedValue": scalar_to_json(claimed),
            "delta": delta,
        }
        if abs(delta) > 1e-9 or gnorm > 1e-6:
            violations.append(entry)
        results.append(entry)
    report = {"results": results, "violations": violations,
              "claimedPoint": CLAIMED_POINT.as_dict()}
    return _finish(report, args, "optimize-q2")


def cmd_expand_fsq(args):
    report = expansion_campaign(args.models, args.coeffs, args.seed)
    return _finish(report, args, "expand-fsq")


def cmd_model(args):
    m = model(args.name)
    rep = pinching_threshold(m)
    payload = {
        "threshold": rep.as_dict(),
        "epsQueried": scalar_to_json(Fraction(args.eps)),
        "meetsQueriedEps": (rep.ratio is None
                            or Fraction(rep.ratio) >= Fraction(args.eps)),
        "einstein": m.einstein,
        "violations": [],
    }
    if m.solitonConstant is not None:
        payload["identities"] = soliton_identity_check(m)
        if not payload["identities"]["allZero"]:
            payload["violations"].append("soliton identity residual nonzero")
    return _finish(payload, args, f"model-{args.name}")


def cmd_models(args):
    table = literature_table()
    table["violations"] = []
    if args.format == "json":
        return _finish(table, args, "models")
    sys.stdout.write(emit(table, args.format).decode())
    if args.out:
        persist(table, args.out, stem="models")
    return EXIT_OK


def cmd_identities(args):
    checks, violations = [], []
    for m in default_models():
        rep = soliton_identity_check(m)
        checks.append(rep)
        if not rep["allZero"]:
            violations.append(rep["name"])
    report = {"checks": checks, "violations": violations}
    return _finish(report, args, "identities")


def cmd_all(args):
    sections = {}
    config = CampaignConfig(
        kind="profile", dims=(3, 4, 5, 6),
        eps_list=(Fraction(-1, 10), Fraction(0), Fraction(1, 48), Fraction(1, 24)),
        s_list=(Fraction(0), Fraction(1, 2), Fraction(3, 4), Fraction(7, 8),
                Fraction(1)),
        count=1000, seed=args.seed, mode=args.arithmetic)
    sections["verifyEstimates"] = mc_campaign(config)

    q2_results = []
    for eps in (Fraction(0), Fraction(1, 48), Fraction(1, 24), Fraction(1, 16)):
        arg, value = optimize_q2(float(eps))
        q2_results.append({"eps": scalar_to_json(eps), "value": value,
                           "claimed": scalar_to_json(q2_claimed_value(eps)),
                           "delta": value - float(q2_claimed_value(eps))})
    sections["optimizeQ2"] = {"results": q2_results}

    sections["expandFsq"] = expansion_campaign(100, 20, args.seed)
    sections["models"] = literature_table()
    sections["identities"] = [soliton_identity_check(m) for m in default_models()]

    violations = list(sections["verifyEstimates"]["violations"])
    violations += [r for r in q2_results if abs(r["delta"]) > 1e-9]
    violations += sections["expandFsq"]["violations"]
    violations += [c["name"] for c in sections["identities"] if not c["allZero"]]
    report = {"sections": sections, "violations": violations}
    return _finish(report, args, "all")


COMMANDS = {
    "verify-estimates": cmd_verify_estimates,
    "optimize-q2": cmd_optimize_q2,
    "expand-fsq": cmd_expand_fsq,
    "model": cmd_model,
    "models": cmd_models,
    "identities": cmd_identities,
    "all": cmd_all,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args = _apply_config_file(args)
        return COMMANDS[args.command](args)
    except SystemExit as exc:   # argparse errors exit 2 already
        raise
    except (DegenerateEpsError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
