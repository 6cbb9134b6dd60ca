"""Command-line front end.

All mathematics lives in the library modules; this file owns only argument
parsing, file I/O and report shaping.  Exit codes: 0 when no check failed
(not-applicable and cap-exceeded outcomes are not failures), 1 when a
verification disagreed or an exhaustive sweep found a counterexample, 2 for
malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any, Optional

from .corpus import emit_report, load_corpus, run_harness
from .criteria import (borel3_order6_det_report, borel_lemma_report, cartan_s3_det_report,
                       gl2_totality_report, groupside_suite, prop42_report, thm_Sn_hypothesis,
                       thm_nongal_p, verify_verdict)
from .curves import torsion_subgroup
from .errors import DegreeCapExceeded, SpecError, TorsionGateError
from .galois import cubic_galois_group, cyclotomic_character_image, is_galois_prime_degree
from .numberfield import DEFAULT_FIELD_DEGREE_CAP, Embedding, NumberField, PolyNF, QQ_FIELD
from .polyq import PolyQ
from .serialize import (curve_from_json, dumps_canonical, field_from_json, field_to_json,
                        poly_from_json, torsion_to_json)

ENV_DEGREE_CAP = "TORSIONGATE_DEGREE_CAP"

LEMMA_NAMES = ("borel", "gl2cases", "cartan-s3", "borel3-det", "prop42", "sn-skeleton", "all")


def _degree_cap(args) -> int:
    if getattr(args, "degree_cap", None):
        return args.degree_cap
    env = os.environ.get(ENV_DEGREE_CAP)
    if env:
        try:
            return int(env)
        except ValueError:
            raise SpecError(f"{ENV_DEGREE_CAP} must be an integer, got {env!r}")
    return DEFAULT_FIELD_DEGREE_CAP


def _load_json(path: str) -> Any:
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError:
        raise SpecError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")


def _load_field(args, attr: str, cap: int) -> NumberField:
    path = getattr(args, attr, None)
    if path is None:
        raise SpecError(f"--{attr} is required")
    if path == "Q":
        return QQ_FIELD
    return field_from_json(_load_json(path), degree_cap=cap)


def _emit(payload: dict, args) -> None:
    if getattr(args, "no_timings", False):
        payload = _strip_timings(payload)
    text = dumps_canonical(payload)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def _strip_timings(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _cmd_torsion(args) -> int:
    cap = _degree_cap(args)
    curve = curve_from_json(_load_json(args.curve), degree_cap=cap)
    field_path = args.field or args.ext
    if field_path:
        L = QQ_FIELD if field_path == "Q" else field_from_json(_load_json(field_path), degree_cap=cap)
        emb = Embedding.from_rationals(L) if L.degree > 1 else Embedding.identity(QQ_FIELD)
    else:
        emb = None
    t0 = time.time()
    data = torsion_subgroup(curve, emb, factor_cap=4 * cap)
    payload = torsion_to_json(data)
    payload["seconds"] = round(time.time() - t0, 3)
    _emit(payload, args)
    return 0


def _cmd_cyc_image(args) -> int:
    cap = _degree_cap(args)
    K = _load_field(args, "base", cap)
    img = cyclotomic_character_image(K, args.ell)
    _emit({"ell": img.ell, "order": img.order, "is_pm1": img.is_pm1,
           "is_trivial": img.is_trivial, "field": field_to_json(K)}, args)
    return 0


def _cmd_galois(args) -> int:
    cap = _degree_cap(args)
    poly = poly_from_json(_load_json(args.ext))
    if poly.degree == 3:
        verdict = cubic_galois_group(PolyNF.from_polyq(QQ_FIELD, poly.monic()))
        witness = {k: str(v) for k, v in verdict.evidence.items()}
        _emit({"kind": verdict.kind, "witness": witness}, args)
        return 0
    L = field_from_json({"defining_poly": [f"{int(c.numerator)}/{int(c.denominator)}"
                                           for c in poly.coeffs]}, degree_cap=cap)
    galois = is_galois_prime_degree(L)
    _emit({"kind": "galois" if galois else "non_galois",
           "witness": {"degree": poly.degree}}, args)
    return 0


def _cmd_check(args) -> int:
    cap = _degree_cap(args)
    curve = curve_from_json(_load_json(args.curve), degree_cap=cap)
    if args.base and args.base != "Q":
        raise SpecError("the executable criterion takes base Q; pass --base Q")
    ext = _load_field(args, "ext", cap)
    verdict = thm_nongal_p(curve, ext, args.ell)
    payload: dict = {"verdict": verdict.to_json()}
    code = 0
    if verdict.applicable and args.verify:
        t0 = time.time()
        report = verify_verdict(verdict, factor_cap=4 * cap)
        payload["verification"] = report.to_json()["brute_force"]
        payload["agrees"] = report.agrees
        payload["seconds"] = round(time.time() - t0, 3)
        if not report.agrees:
            code = 1
    _emit(payload, args)
    return code


def _cmd_lemmas(args) -> int:
    name = args.name
    ell = args.ell
    reports: list[dict] = []
    if name in ("borel", "all"):
        reports.append(borel_lemma_report(ell or 3))
    if name in ("gl2cases", "all"):
        if (ell or 3) == 3:
            reports.append(gl2_totality_report(3))
        else:
            reports.append(gl2_totality_report(ell, sample=500))
    if name in ("cartan-s3", "all"):
        reports.append(cartan_s3_det_report(ell or 5))
    if name in ("borel3-det", "all"):
        reports.append(borel3_order6_det_report())
    if name in ("prop42", "all"):
        reports.append(prop42_report(ell or 11, 5))
    if name == "sn-skeleton":
        verdict = thm_Sn_hypothesis(PolyQ([-1, -1, 0, 0, 0, 1]), 5)
        reports.append({"lemma": "sn_skeleton", "n": 5,
                        "cases_checked": 1,
                        "failures": [] if verdict.applicable else [{"reason": verdict.reason}],
                        "witnesses": verdict.witnesses})
    failures = sum(len(r.get("failures", [])) for r in reports)
    _emit({"reports": reports, "total_failures": failures}, args)
    return 0 if failures == 0 else 1


def _cmd_batch(args) -> int:
    corpus = load_corpus(args.input)
    report = run_harness(corpus, jobs=args.jobs, verify=args.verify,
                         with_timings=not args.no_timings)
    if args.format == "text":
        text = emit_report(report, "text")
        if args.output:
            with open(args.output, "w") as f:
                f.write(text + "\n")
        else:
            print(text)
    else:
        _emit(report, args)
    return 0 if report["summary"]["fail"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsiongate",
        description="decide, certify and brute-force verify torsion growth of "
                    "elliptic curves under number-field base change")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--degree-cap", type=int, default=None,
                       help=f"field degree cap (default {DEFAULT_FIELD_DEGREE_CAP}, "
                            f"env {ENV_DEGREE_CAP})")
        p.add_argument("--output", help="write the JSON report to this path")
        p.add_argument("--no-timings", action="store_true",
                       help="omit timings for byte-identical reports")

    p = sub.add_parser("torsion", help="full torsion subgroup over a field")
    p.add_argument("--curve", required=True)
    p.add_argument("--field", help="extension field spec (alias of --ext)")
    p.add_argument("--ext")
    common(p)
    p.set_defaults(func=_cmd_torsion)

    p = sub.add_parser("cyc-image", help="mod-ell cyclotomic character image")
    p.add_argument("--base", required=True, help="field spec path, or Q")
    p.add_argument("--ell", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_cyc_image)

    p = sub.add_parser("galois", help="Galois type of a cubic / prime-degree field")
    p.add_argument("--ext", required=True, help="polynomial JSON (coefficient array)")
    common(p)
    p.set_defaults(func=_cmd_galois)

    p = sub.add_parser("check", help="run the growth criterion on one instance")
    p.add_argument("--curve", required=True)
    p.add_argument("--base", default="Q")
    p.add_argument("--ext", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="brute-force both sides of the claim")
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("lemmas", help="exhaustive matrix-group verification sweeps")
    p.add_argument("--name", required=True, choices=LEMMA_NAMES)
    p.add_argument("--ell", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_lemmas)

    p = sub.add_parser("batch", help="run the corpus harness")
    p.add_argument("--input", default=None, help="corpus JSON (default: built-in)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--verify", action="store_true", default=True)
    p.add_argument("--no-verify", dest="verify", action="store_false")
    common(p)
    p.set_defaults(func=_cmd_batch)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegreeCapExceeded as exc:
        print(f"degree cap exceeded: {exc}", file=sys.stderr)
        return 0
    except TorsionGateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
