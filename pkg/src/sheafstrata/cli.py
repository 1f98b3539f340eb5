"""Command line interface.

Presentations travel as JSON (see Presentation.to_json); "-" means stdin,
so subcommands compose under a shell pipe.  Reports are line-oriented
key=value text, or a single JSON object with --json.  Exit codes: 0 on
success, 1 on domain errors or failed verification, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import blowdown as blowdown_mod
from .builders import (PointSet, sextic_sheaf, twisted_ideal_sheaf,
                       x5_normal_form, x6_normal_form)
from .cohomology import cohomology_table, euler_characteristic, h0, h1
from .errors import SheafStrataError
from .fields import QQ
from .forms import parse_form
from .kronecker import (KroneckerModule, default_prime,
                        forbidden_block_shapes, instability_witness_search)
from .presentation import dualize, from_json
from .strata import StratumId, classify_report, codim_audit, sample, verify_w

FAIL_VERDICT = "fail"


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_presentation(path):
    return from_json(_read_text(path))


def _emit_presentation(P, args):
    text = P.to_json(indent=2 if getattr(args, "pretty", False) else None)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _error_slug(exc):
    name = type(exc).__name__
    if name.endswith("Error"):
        name = name[:-len("Error")]
    parts = []
    for ch in name:
        if ch.isupper() and parts:
            parts.append("-")
        parts.append(ch.lower())
    return "".join(parts)


def _stratum(text):
    try:
        return StratumId(text.upper())
    except ValueError:
        raise argparse.ArgumentTypeError(
            "unknown stratum %r (use X0..X7, X3D)" % text)


def _report_dict(report):
    return {
        "stratum": report.stratum.value,
        "triple": list(report.triple),
        "hilbert": list(report.hilbert),
        "checks": [{"name": c.name, "verdict": c.verdict, "detail": c.detail}
                   for c in report.checks],
        "flags": list(report.flags),
    }


def cmd_classify(args):
    P = _read_presentation(args.file)
    report = classify_report(P, rng=random.Random(args.seed), trials=args.trials)
    if args.json:
        print(json.dumps(_report_dict(report)))
    else:
        print("stratum=%s triple=%s" % (report.stratum,
                                        ",".join(str(v) for v in report.triple)))
        for c in report.checks:
            print("check.%s=%s" % (c.name, c.verdict))
        for flag in report.flags:
            print("flag=%s" % flag)
    return 0


def cmd_verify(args):
    P = _read_presentation(args.file)
    checks = verify_w(P, args.stratum, rng=random.Random(args.seed),
                      trials=args.trials)
    failed = any(c.verdict == FAIL_VERDICT for c in checks)
    if args.json:
        print(json.dumps({
            "stratum": args.stratum.value,
            "checks": [{"name": c.name, "verdict": c.verdict, "detail": c.detail}
                       for c in checks],
            "verdict": "fail" if failed else "pass",
        }))
    else:
        print("stratum=%s" % args.stratum)
        for c in checks:
            line = "check.%s=%s" % (c.name, c.verdict)
            if c.detail:
                line += " detail=%s" % c.detail.replace(" ", "_")
            print(line)
        print("verdict=%s" % ("fail" if failed else "pass"))
    return 1 if failed else 0


def cmd_sample(args):
    P = sample(args.stratum, rng=random.Random(args.seed), height=args.height)
    _emit_presentation(P, args)
    return 0


def cmd_audit(args):
    rows = codim_audit()
    ok = all(r.ok for r in rows)
    if args.json:
        print(json.dumps({
            "rows": [{"stratum": r.stratum.value, "dim": r.dim, "codim": r.codim,
                      "expected_codim": r.expected_codim, "ok": r.ok}
                     for r in rows],
            "ok": ok,
        }))
    else:
        for r in rows:
            print("stratum=%s dim=%d codim=%d expected=%d status=%s"
                  % (r.stratum, r.dim, r.codim, r.expected_codim,
                     "pass" if r.ok else "fail"))
    return 0 if ok else 1


def cmd_cohomology(args):
    P = _read_presentation(args.file)
    table = cohomology_table(P)
    payload = {
        "h0_minus_one": table.h0_minus_one,
        "h1_zero": table.h1_zero,
        "h0_omega": table.h0_omega,
        "triple": list(table.as_tuple()),
    }
    if args.twist is not None:
        n = args.twist
        payload["twist"] = n
        payload["h0"] = h0(P, n)
        payload["h1"] = h1(P, n)
        payload["chi"] = euler_characteristic(P, n)
    if args.json:
        print(json.dumps(payload))
    else:
        print("h0_minus_one=%d" % table.h0_minus_one)
        print("h1_zero=%d" % table.h1_zero)
        print("h0_omega=%d" % table.h0_omega)
        print("triple=%s" % ",".join(str(v) for v in table.as_tuple()))
        if args.twist is not None:
            print("twist=%d h0=%d h1=%d chi=%d"
                  % (n, payload["h0"], payload["h1"], payload["chi"]))
    return 0


def cmd_dualize(args):
    P = _read_presentation(args.file)
    _emit_presentation(dualize(P, args.twist), args)
    return 0


def cmd_kron_check(args):
    P = _read_presentation(args.file)
    M = KroneckerModule.from_forms([list(row) for row in P.entries], P.field)
    witness = instability_witness_search(
        M, trials=args.trials, rng=random.Random(args.seed), prime=args.prime)
    shapes = forbidden_block_shapes(M.p, M.q)
    if args.json:
        payload = {
            "p": M.p, "q": M.q, "m": M.m, "trials": args.trials,
            "forbidden_block_shapes": [list(s) for s in shapes],
            "witness": None if witness is None else {
                "shape": list(witness.shape),
                "u_basis": [[str(x) for x in v] for v in witness.u_basis],
                "w_basis": [[str(x) for x in v] for v in witness.w_basis],
            },
        }
        print(json.dumps(payload))
    else:
        print("module=%dx%d m=%d" % (M.q, M.p, M.m))
        print("forbidden_block_shapes=%s"
              % ";".join("%dx%d" % s for s in shapes))
        if witness is None:
            print("witness=none trials=%d" % args.trials)
            print("semistable=probably")
        else:
            print("witness=found subspaces=%d,%d" % witness.shape)
            print("semistable=no")
    return 0


def cmd_blowdown(args):
    P = _read_presentation(args.file)
    if args.variant == "10":
        image = blowdown_mod.delta10(P)
    elif args.variant == "7":
        image = blowdown_mod.delta7(P)
    else:
        image = blowdown_mod.blow_down(P)
    c = blowdown_mod.chart_parameter(P)
    if c.is_zero:
        status, report = "skipped", None
    else:
        report = blowdown_mod.fiber_consistency(P)
        status = "match" if report.match else "mismatch"
    if args.json:
        print(json.dumps({
            "consistency": status,
            "input_table": None if report is None else list(report.input_table),
            "image_table": None if report is None else list(report.image_table),
            "image": image.to_json_dict(),
        }))
    else:
        if report is None:
            print("consistency=skipped reason=chart-parameter-zero")
        else:
            print("consistency=%s input_triple=%s image_triple=%s"
                  % (status,
                     ",".join(str(v) for v in report.input_table),
                     ",".join(str(v) for v in report.image_table)))
        _emit_presentation(image, args)
    return 1 if status == "mismatch" else 0


def _parse_point(text):
    coords = text.split(",")
    if len(coords) != 3:
        raise argparse.ArgumentTypeError("a point needs 3 comma-separated coordinates")
    return tuple(coords)


def cmd_build(args):
    rng = random.Random(args.seed)
    if args.builder == "sextic":
        P = sextic_sheaf(parse_form(args.f, QQ))
    elif args.builder == "jz3":
        data = json.loads(_read_text(args.points))
        Z = PointSet(data)
        P = twisted_ideal_sheaf(Z, parse_form(args.f, QQ))
    elif args.builder == "x5":
        P = x5_normal_form(parse_form(args.q1, QQ), parse_form(args.l1, QQ),
                           parse_form(args.q2, QQ), parse_form(args.l2, QQ),
                           rng=rng, height=args.height)
    else:
        P = x6_normal_form(args.p1, args.p2, rng=rng, height=args.height)
    _emit_presentation(P, args)
    return 0


def _add_io_flags(sub, with_input=True):
    if with_input:
        sub.add_argument("file", nargs="?", default="-",
                         help="presentation JSON file, or - for stdin")
    sub.add_argument("--json", action="store_true", help="emit one JSON object")


def _add_emit_flags(sub):
    sub.add_argument("--pretty", action="store_true", help="indent emitted JSON")
    sub.add_argument("-o", "--output", help="write the presentation here")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sheafstrata",
        description="Classify one-dimensional plane sheaves of multiplicity 6 "
                    "and Euler characteristic 3 by exact cohomology computations.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("classify", help="stratum and consistency report")
    _add_io_flags(sub)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--trials", type=int, default=600,
                     help="randomized semistability search budget")
    sub.set_defaults(func=cmd_classify)

    sub = subs.add_parser("verify", help="membership conditions for a stratum shape")
    sub.add_argument("stratum", type=_stratum)
    _add_io_flags(sub)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--trials", type=int, default=1200)
    sub.set_defaults(func=cmd_verify)

    sub = subs.add_parser("sample", help="random presentation in a stratum")
    sub.add_argument("stratum", type=_stratum)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--height", type=int, default=5)
    _add_emit_flags(sub)
    sub.set_defaults(func=cmd_sample)

    sub = subs.add_parser("audit", help="stratum dimension and codimension table")
    _add_io_flags(sub, with_input=False)
    sub.set_defaults(func=cmd_audit)

    sub = subs.add_parser("cohomology", help="cohomology table of a presentation")
    _add_io_flags(sub)
    sub.add_argument("--twist", type=int, default=None)
    sub.set_defaults(func=cmd_cohomology)

    sub = subs.add_parser("dualize", help="graded transpose presentation")
    _add_io_flags(sub)
    sub.add_argument("--twist", type=int, default=1,
                     help="extra twist of the duality (default 1)")
    _add_emit_flags(sub)
    sub.set_defaults(func=cmd_dualize)

    kron = subs.add_parser("kron", help="Kronecker module checks")
    kron_subs = kron.add_subparsers(dest="kron_command", required=True)
    sub = kron_subs.add_parser("check", help="randomized instability search")
    _add_io_flags(sub)
    sub.add_argument("--trials", type=int, default=10000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--prime", type=int, default=default_prime(),
                     help="search prime (env SHEAF_STRATA_PRIME)")
    sub.set_defaults(func=cmd_kron_check)

    sub = subs.add_parser("blowdown", help="collapse a bordered resolution")
    sub.add_argument("--variant", choices=("7", "10"), default=None,
                     help="force a variant; default dispatches on the twists")
    _add_io_flags(sub)
    _add_emit_flags(sub)
    sub.set_defaults(func=cmd_blowdown)

    build = subs.add_parser("build", help="presentations from geometric input")
    build_subs = build.add_subparsers(dest="builder", required=True)

    sub = build_subs.add_parser("sextic", help="rank-one sheaf of a sextic curve")
    sub.add_argument("--f", required=True, help="sextic form, e.g. \"X^6+Y^6+Z^6\"")
    sub.add_argument("--seed", type=int, default=0)
    _add_emit_flags(sub)
    sub.set_defaults(func=cmd_build)

    sub = build_subs.add_parser("jz3", help="twisted ideal sheaf of 6 points on a sextic")
    sub.add_argument("--points", required=True,
                     help="JSON file with six coordinate triples")
    sub.add_argument("--f", required=True, help="sextic form vanishing on the points")
    sub.add_argument("--seed", type=int, default=0)
    _add_emit_flags(sub)
    sub.set_defaults(func=cmd_build)

    sub = build_subs.add_parser("x5", help="normal form from (q1, l1, q2, l2)")
    sub.add_argument("--q1", required=True)
    sub.add_argument("--l1", required=True)
    sub.add_argument("--q2", required=True)
    sub.add_argument("--l2", required=True)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--height", type=int, default=5)
    _add_emit_flags(sub)
    sub.set_defaults(func=cmd_build)

    sub = build_subs.add_parser("x6", help="normal form from two base points")
    sub.add_argument("--p1", required=True, type=_parse_point,
                     help="comma-separated coordinates, e.g. 1,0,0")
    sub.add_argument("--p2", required=True, type=_parse_point)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--height", type=int, default=5)
    _add_emit_flags(sub)
    sub.set_defaults(func=cmd_build)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SheafStrataError as exc:
        print("error=%s" % _error_slug(exc))
        print("message=%s" % exc)
        return 1
    except FileNotFoundError as exc:
        print("error=file-not-found")
        print("message=%s" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
