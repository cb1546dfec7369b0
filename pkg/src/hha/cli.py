"""Command-line front end.

Exit codes: 0 success or expectations met; 1 verdict mismatch or rejected
certificate; 2 input or precondition error.  JSON output is byte-stable for
identical input.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import catalog as catalog_mod
from .classify import (
    Certificate,
    GauduchonRequiredError,
    PREDICATES,
    classify_metric,
    qbal_nonexistence_certificate,
    search_metrics,
)
from .constructions import (
    ConstructionError,
    QuaternionicRep,
    arroyo_nicolini,
    barberis_fino,
    joyce_build,
    joyce_su2_tori,
    joyce_su3_data,
    sp1_spin_rep,
)
from .documents import (
    InputError,
    default_field_from_env,
    geometry_to_input,
    load_document,
    parse_input,
    report_document,
    report_json,
    report_text,
)
from .forms import Form
from .hermitian import MetricError, QRealError
from .hypercomplex import IntegrabilityError, SpherePoint, StructureError
from .liealg import JacobiError
from .scalars import ComplexScalar, parse_scalar


INPUT_FAULTS = (InputError, JacobiError, IntegrabilityError, StructureError,
                MetricError, QRealError, ConstructionError, ValueError,
                OSError)


def _load_file(path: str, float_mode: bool = False):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    default = default_field_from_env(os.environ.get("HHA_DEFAULT_FIELD"))
    doc = parse_input(text, default_field=default)
    if float_mode:
        raw = dict(doc.raw)
        raw["scalar_field"] = {"kind": "float", "tolerance": 1e-9}
        doc = parse_input(json.dumps(raw))
    geom, metric = load_document(doc)
    return doc, geom, metric


def _parse_sphere_point(text: str) -> SpherePoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError("--pair", "sphere point needs three components")
    return SpherePoint(*(parse_scalar(p) for p in parts))


_WITNESS_TERM = re.compile(
    r"(?P<sign>[+-]?)\s*(?:\((?P<paren>[^()]*(?:\([^()]*\)[^()]*)*)\)\s*\*\s*)?"
    r"(?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?(?P<imag>i\s*\*\s*)?z(?P<idx>\d+)\s*"
)


def parse_witness(expr: str, geom) -> Form:
    """Parse a (1,0)-form expression like "2*z5" or "(1/2)*i*z3 - z1"."""
    pos = 0
    out = Form.zero(geom.algebra.dim, 1)
    expr = expr.strip()
    if not expr:
        raise InputError("--witness", "empty expression")
    while pos < len(expr):
        m = _WITNESS_TERM.match(expr, pos)
        if not m or m.end() == pos:
            raise InputError("--witness", f"cannot parse {expr!r} at offset {pos}")
        coeff_text = m.group("paren") or m.group("coef") or "1"
        c = ComplexScalar(parse_scalar(coeff_text))
        if m.group("imag"):
            c = c.times_i()
        if m.group("sign") == "-":
            c = -c
        idx = int(m.group("idx"))
        if not (1 <= idx <= geom.N):
            raise InputError("--witness", f"z{idx} out of range")
        out = out + geom.zeta(idx) * c
        pos = m.end()
    return out


def _emit_report(report, doc, geom, fmt: str, pair: str = "standard"):
    document = report_document(report, doc, frame=geom.frame, pair=pair)
    if fmt == "json":
        sys.stdout.write(report_json(document))
    else:
        sys.stdout.write(report_text(document))


def cmd_check(args) -> int:
    doc, geom, metric = _load_file(args.file)
    profile = geom.algebra.validate()
    print(f"{doc.name}: valid input")
    print(f"  dimension {geom.algebra.dim} (n = {geom.n}), field {geom.algebra.field!r}")
    print(f"  nilpotent: {profile.nilpotent} (step {profile.nilpotency_step}), "
          f"solvable: {profile.solvable}, unimodular: {profile.unimodular}")
    print(f"  structure integrable, metric q-real and q-positive; "
          f"pf = {metric.pf}")
    return 0


def cmd_classify(args) -> int:
    doc, geom, metric = _load_file(args.file, float_mode=args.float)
    pair = "standard"
    if args.pair:
        halves = args.pair.split(";")
        if len(halves) != 2:
            raise InputError("--pair", "expected 'a,b,c;a,b,c'")
        p = _parse_sphere_point(halves[0])
        q = _parse_sphere_point(halves[1])
        rotated = geom.rotated(p, q)
        metric = metric.in_rotated_frame(rotated)
        geom = rotated
        pair = args.pair
    report = classify_metric(metric)
    _emit_report(report, doc, geom, args.format, pair=pair)
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog_mod.entry_names():
            entry = catalog_mod.get_example(name)
            print(f"{name:<14} {entry.description}")
        return 0
    if args.action == "export":
        entry = catalog_mod.get_example(args.name)
        if entry.input_data is not None:
            data = entry.input_data
        else:
            geom, metric = entry.load()
            data = geometry_to_input(entry.name, geom, metric)
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
        return 0
    # run
    names = None if args.name in (None, "all") else [args.name]
    outcomes = catalog_mod.run_report(names)
    failed = 0
    for outcome in outcomes:
        status = "PASS" if outcome.passed else "FAIL"
        print(f"{outcome.name:<14} {status}")
        if args.verbose or not outcome.passed:
            for c in outcome.checks:
                mark = "ok" if c.passed else "FAIL"
                detail = f"  [{c.detail}]" if c.detail and not c.passed else ""
                print(f"    {mark:<4} {c.label}{detail}")
        if not outcome.passed:
            failed += 1
    print(f"{len(outcomes) - failed}/{len(outcomes)} entries passed")
    return 1 if failed else 0


def cmd_construct(args) -> int:
    if args.kind == "an":
        _, ga, ma = _load_file(args.inputs[0])
        _, gb, mb = _load_file(args.inputs[1])
        res = arroyo_nicolini(ga, ma, args.e1, gb, mb, args.e2)
        geom, metric, report = res.geometry, res.metric, res.output_report
        print(f"glued algebra: dimension {geom.algebra.dim}")
        print(f"flag closure holds: {res.iff_flags_hold()}")
    elif args.kind == "bf":
        _, gbase, mbase = _load_file(args.inputs[0])
        if args.rep == "zero":
            rho = QuaternionicRep.zero(gbase.algebra, args.k)
        else:
            indices = tuple(int(x) - 1 for x in args.su2.split(","))
            rho = sp1_spin_rep(gbase.algebra, su2_indices=indices)
        res = barberis_fino(gbase, mbase, rho)
        geom, metric, report = res.geometry, res.metric, res.output_report
        print(f"extended algebra: dimension {geom.algebra.dim}")
        print(f"representation skew: {res.rep_is_skew}; "
              f"canonical forms pulled back: {res.pullback_verified}")
    else:  # joyce
        if args.su3:
            data = joyce_su3_data()
        elif args.blocks:
            ds = [int(x) for x in args.blocks.split(",")]
            if any(d != 0 for d in ds):
                raise InputError(
                    "--blocks",
                    "only module-free blocks ship built-in; supply module "
                    "bracket tables through the library interface",
                )
            data = joyce_su2_tori(len(ds))
        else:
            raise InputError("construct joyce", "need --blocks or --su3")
        res = joyce_build(data)
        geom, metric = res.geometry, res.metric
        report = classify_metric(metric)
        print(f"block algebra: dimension {geom.algebra.dim}, "
              f"einstein factor {res.einstein_factor}")
    if args.out:
        data = geometry_to_input(args.name or "constructed", geom, metric)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
        print(f"wrote {args.out}")
    _emit_report(report, None, geom, args.format)
    return 0


def cmd_certify_qbal(args) -> int:
    doc, geom, metric = _load_file(args.file)
    psi = parse_witness(args.witness, geom)
    result = qbal_nonexistence_certificate(geom, psi)
    if isinstance(result, Certificate):
        print("certificate ACCEPTED: no invariant quaternionic balanced metric exists")
        for line in result.transcript:
            print(f"  {line}")
        return 0
    print(f"certificate REJECTED: {result.reason}")
    return 1


def cmd_search(args) -> int:
    doc, geom, metric = _load_file(args.file)
    if args.predicate not in PREDICATES:
        raise InputError("--predicate",
                         f"unknown predicate; choose from {sorted(PREDICATES)}")
    res = search_metrics(geom, args.predicate, family=args.family,
                         height=args.height, budget=args.budget)
    if res.witness is not None:
        print(f"witness found after {res.tested} metrics:")
        print(f"  Omega = {geom.frame.format(res.witness.omega)}")
    else:
        status = "exhausted" if res.exhausted else "budget reached"
        print(f"no witness ({status}; {res.tested} metrics tested)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hha",
        description="exact invariant exterior calculus and special-metric "
                    "classification for hypercomplex Lie algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate an input file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="classify the metric of an input file")
    p.add_argument("file")
    p.add_argument("--pair", help="rotated pair 'a,b,c;a,b,c' (exact scalars)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--float", action="store_true",
                   help="re-run in the float cross-check backend")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", help="work with the built-in corpus")
    p.add_argument("action", choices=("list", "run", "export"))
    p.add_argument("name", nargs="?")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("construct", help="run a construction")
    p.add_argument("kind", choices=("an", "bf", "joyce"))
    p.add_argument("inputs", nargs="*")
    p.add_argument("--e1", type=int, default=2, help="gluing index in the first factor")
    p.add_argument("--e2", type=int, default=2, help="gluing index in the second factor")
    p.add_argument("--rep", choices=("zero", "spin"), default="zero")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--su2", default="2,3,4",
                   help="1-based indices of the su(2) triple for the spin representation")
    p.add_argument("--blocks", help="comma list of module dimensions, e.g. 0,0")
    p.add_argument("--su3", action="store_true")
    p.add_argument("--out", help="write the constructed data as an input file")
    p.add_argument("--name")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify-qbal",
                       help="verify a nonexistence certificate for q-balanced metrics")
    p.add_argument("file")
    p.add_argument("--witness", required=True,
                   help="(1,0)-form expression, e.g. '2*z5'")
    p.set_defaults(func=cmd_certify_qbal)

    p = sub.add_parser("search", help="grid search for a metric with a predicate")
    p.add_argument("file")
    p.add_argument("--predicate", required=True)
    p.add_argument("--height", type=int, default=3)
    p.add_argument("--family", choices=("diagonal", "full"), default="diagonal")
    p.add_argument("--budget", type=int, default=2000)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except catalog_mod.UnknownEntryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GauduchonRequiredError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except INPUT_FAULTS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
