"""Batch verification and reporting front end.

Subcommands:

* verify       -- sample seeded random curves over a field for a genus range
                  and check every rank report against the proven dimensions;
* report       -- one rank report for an explicitly given curve spec;
* normal-form  -- reduce a raw char-2 curve a*y^2 + b*y + c = 0 to its
                  Artin-Schreier normal form, with the transform log;
* hirzebruch   -- the surface-side dimension counts per genus.

Exit codes: 0 all checks passed, 1 a check failed or a reduction was
rejected, 2 invalid input.  JSON output is newline-delimited, one object per
line, and byte-identical for identical configurations; summaries go to
stderr so stdout stays machine-readable.  TORELLI_LAB_THREADS caps the
worker pool for verify trials (output order is deterministic either way).
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .curves import (
    RawASCurve,
    mobius_shift,
    normal_form_string,
    parse_curve_spec,
    random_curve,
    reduce_to_normal_form,
    replay_check,
    serialize_curve,
)
from .errors import (
    AlgebraError,
    DegenerateCurve,
    FieldTooSmall,
    NonGenericB,
    ParseError,
)
from .fields import FieldElem, field_spec_string, parse_element, parse_field_spec
from .hirzebruch import dimension_table_row
from .poly import parse_poly
from .tangent import rank_report


def _parse_genus_range(s):
    if ".." in s:
        lo_s, hi_s = s.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(s)
    if lo < 2 or hi < lo:
        raise ParseError(f"bad genus range {s!r} (need 2 <= a <= b)", 0)
    return lo, hi


def _trial_seed(seed, g, trial):
    return seed * 1_000_003 + g * 10_007 + trial


def _workers():
    try:
        return max(1, int(os.environ.get("TORELLI_LAB_THREADS", "1")))
    except ValueError:
        return 1


_REPORT_HEADER = (
    f"{'genus':>5} {'trial':>5} {'mult':>5} {'ker':>4} {'im':>4} "
    f"{'comb':>5} {'coker':>5} {'pass':>5}"
)


def _report_row(g, trial, rep):
    o = rep.observed
    return (
        f"{g:>5} {trial:>5} {o['mult_rank']:>5} {o['ker_mu0_dim']:>4} "
        f"{o['im_mu1_dim']:>4} {o['combined_rank']:>5} {o['cokernel_dim']:>5} "
        f"{'ok' if rep.passed else 'FAIL':>5}"
    )


def run_verify(args):
    field = parse_field_spec(args.field)
    lo, hi = _parse_genus_range(args.genus)
    if args.trials < 1:
        raise ParseError("--trials must be >= 1", 0)
    if field.is_finite:
        for g in range(lo, hi + 1):
            if field.order < 2 * g:
                raise FieldTooSmall(
                    f"|{field}| = {field.order} < 2g = {2 * g} at genus {g}"
                )
    jobs = [(g, t) for g in range(lo, hi + 1) for t in range(args.trials)]

    def one(job):
        g, t = job
        child = _trial_seed(args.seed, g, t)
        return rank_report(random_curve(field, g, child), seed=child)

    workers = _workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(one, jobs))
    else:
        reports = [one(job) for job in jobs]

    npass = sum(1 for r in reports if r.passed)
    if args.format == "json":
        for rep in reports:
            print(rep.to_json())
        print(f"verify: {npass}/{len(reports)} reports passed", file=sys.stderr)
    else:
        print(f"field {field_spec_string(field)}, seed {args.seed}")
        print(_REPORT_HEADER)
        for (g, t), rep in zip(jobs, reports):
            print(_report_row(g, t, rep))
        print(f"verify: {npass}/{len(reports)} reports passed")
    return 0 if npass == len(reports) else 1


def run_report(args):
    model = parse_curve_spec(args.curve)
    rep = rank_report(model, seed=args.seed)
    if args.format == "json":
        print(rep.to_json())
    else:
        print(f"curve: {rep.curve}")
        print(_REPORT_HEADER)
        print(_report_row(rep.genus, 0, rep))
    return 0 if rep.passed else 1


def run_normal_form(args):
    field = parse_field_spec(args.field)
    b = parse_poly(field, args.b)
    c = parse_poly(field, args.c)
    a = parse_element(field, args.a)
    raw = RawASCurve(field, a, b, c)
    if args.mobius_root is not None:
        rho = parse_element(field, args.mobius_root)
        if b(rho).v != field.rzero:
            raise ParseError(
                f"--mobius-root {args.mobius_root} is not a root of b", 0
            )
        raw = mobius_shift(raw, rho)
    try:
        model, log = reduce_to_normal_form(raw)
    except (NonGenericB, DegenerateCurve) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    ok = replay_check(raw, model, log)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "field": field_spec_string(field),
                    "genus": model.g,
                    "f": normal_form_string(model),
                    "alpha0": field.rstr(model.alpha0),
                    "branch": [
                        [field.rstr(p), field.rstr(al)] for p, al in model.branch
                    ],
                    "curve": serialize_curve(model),
                    "transform": log.to_json(),
                    "replay_ok": ok,
                },
                separators=(",", ":"),
            )
        )
    else:
        print(f"normal form: y^2 - y = {normal_form_string(model)}")
        print(f"genus: {model.g}")
        points = ", ".join(field.rstr(p) for p, _ in model.branch)
        print(
            f"branch points: {points} and infinity; ramification order 2 each, "
            f"total {2 * model.g + 2}"
        )
        print(f"curve spec: {serialize_curve(model)}")
        print(f"transform: {len(log.steps)} steps, replay identity "
              f"{'verified' if ok else 'FAILED'}")
    return 0 if ok else 1


_HIRZEBRUCH_HEADER = (
    f"{'genus':>5} {'surface':>8} {'class':>10} {'C.C':>5} {'adj_g':>5} "
    f"{'h0':>4} {'proj':>5} {'aut':>4} {'dim_Hg':>6}"
)


def run_hirzebruch(args):
    lo, hi = _parse_genus_range(args.genus)
    rows = [dimension_table_row(g) for g in range(lo, hi + 1)]
    if args.format == "json":
        for row in rows:
            print(json.dumps(row, separators=(",", ":")))
    else:
        print(_HIRZEBRUCH_HEADER)
        for r in rows:
            print(
                f"{r['genus']:>5} {r['surface']:>8} {r['curve_class']:>10} "
                f"{r['self_intersection']:>5} {r['adjunction_genus']:>5} "
                f"{r['h0']:>4} {r['proj_dim']:>5} {r['aut_dim']:>4} "
                f"{r['dim_hg']:>6}"
            )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="torelli-lab",
        description="Exact verification of hyperelliptic tangent-space ranks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="randomized rank verification over a field")
    p.add_argument("--field", required=True, help='"Q", "GF(p)" or "GF(p^k)"')
    p.add_argument("--genus", required=True, help='single genus or a range "a..b"')
    p.add_argument("--trials", type=int, default=20, help="curves per genus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("report", help="rank report for one explicit curve")
    p.add_argument("--curve", required=True, help="curve spec string")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=run_report)

    p = sub.add_parser("normal-form", help="char-2 Artin-Schreier normal form")
    p.add_argument("--field", required=True, help='a char-2 field, e.g. "GF(2^4)"')
    p.add_argument("--b", required=True, help="the coefficient polynomial b(x)")
    p.add_argument("--c", required=True, help="the coefficient polynomial c(x)")
    p.add_argument("--a", default="1", help="the y^2 coefficient (field element)")
    p.add_argument(
        "--mobius-root",
        default=None,
        help="apply x -> rho + 1/x first, sending this root of b to infinity",
    )
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=run_normal_form)

    p = sub.add_parser("hirzebruch", help="surface-side dimension counts")
    p.add_argument("--genus", required=True, help='single genus or a range "a..b"')
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=run_hirzebruch)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NonGenericB, DegenerateCurve) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except AlgebraError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
