"""The built-in verification corpus and the batch harness.

A corpus pairs a list of curves over Q (with their independently computed
torsion pinned for cross-checking) with a list of extension fields and a
prime list.  The harness runs the growth criterion on every
(curve, extension, prime) triple, brute-force verifies every applicable
verdict, computes full torsion over the non-Galois cubics for the refined
membership scan, and aggregates everything into one deterministic report.
"""

from __future__ import annotations

import json
import time
from importlib import resources
from multiprocessing import Pool
from typing import Any, Optional

from .criteria import najman_check, thm_nongal_p, verify_verdict
from .curves import Curve, torsion_subgroup
from .errors import DegreeCapExceeded, SpecError
from .galois import is_galois_prime_degree
from .numberfield import DEFAULT_FIELD_DEGREE_CAP, Embedding, NumberField, QQ_FIELD, nf_create
from .serialize import poly_from_json, rational_from_str

SCHEMA_VERSION = "1"


def load_corpus(path: Optional[str] = None) -> dict:
    """The checked-in default corpus, or one loaded from a JSON file."""
    if path is None:
        raw = resources.files("torsiongate.data").joinpath("corpus.json").read_text()
    else:
        with open(path) as f:
            raw = f.read()
    data = json.loads(raw)
    for key in ("curves", "extensions", "primes"):
        if key not in data:
            raise SpecError(f"corpus is missing {key!r}")
    return data


def corpus_curve(entry: dict) -> Curve:
    ainv = [rational_from_str(str(a)) for a in entry["a_invariants"]]
    return Curve(QQ_FIELD, ainv)


def corpus_field(entry: dict, degree_cap: int = DEFAULT_FIELD_DEGREE_CAP) -> NumberField:
    return nf_create(poly_from_json(entry["defining_poly"]),
                     label=entry.get("label", ""), degree_cap=degree_cap)


def run_criterion_task(curve_entry: dict, ext_entry: dict, ell: int,
                       verify: bool = True, with_timings: bool = True) -> dict:
    """One (curve, extension, ell) cell of the harness."""
    t0 = time.time()
    curve = corpus_curve(curve_entry)
    ext = corpus_field(ext_entry)
    out: dict[str, Any] = {
        "kind": "criterion",
        "curve": curve_entry["label"],
        "extension": ext_entry["label"],
        "ell": ell,
    }
    try:
        verdict = thm_nongal_p(curve, ext, ell)
        out["verdict"] = verdict.to_json()
        if not verdict.applicable:
            out["status"] = "not_applicable"
        elif not verify:
            out["status"] = "pass"
        else:
            report = verify_verdict(verdict)
            out["verification"] = report.to_json()["brute_force"]
            out["status"] = "pass" if report.agrees else "fail"
    except DegreeCapExceeded as exc:
        out["status"] = "cap_exceeded"
        out["detail"] = str(exc)
    if with_timings:
        out["seconds"] = round(time.time() - t0, 3)
    return out


def run_najman_task(curve_entry: dict, ext_entry: dict,
                    with_timings: bool = True) -> dict:
    """Full torsion over a non-Galois cubic plus the refined-list membership."""
    t0 = time.time()
    curve = corpus_curve(curve_entry)
    ext = corpus_field(ext_entry)
    out: dict[str, Any] = {
        "kind": "najman",
        "curve": curve_entry["label"],
        "extension": ext_entry["label"],
    }
    try:
        data = torsion_subgroup(curve, Embedding.from_rationals(ext))
        out["torsion"] = data.structure()
        out["invariants"] = [data.invariant_m, data.invariant_n]
        out["status"] = "pass" if najman_check(data) else "fail"
    except DegreeCapExceeded as exc:
        out["status"] = "cap_exceeded"
        out["detail"] = str(exc)
    if with_timings:
        out["seconds"] = round(time.time() - t0, 3)
    return out


def _run_task_tuple(args) -> dict:
    kind, curve_entry, ext_entry, ell, verify, with_timings = args
    if kind == "criterion":
        return run_criterion_task(curve_entry, ext_entry, ell, verify, with_timings)
    return run_najman_task(curve_entry, ext_entry, with_timings)


def plan_tasks(corpus: dict, verify: bool = True, with_timings: bool = True,
               include_najman: bool = True) -> list[tuple]:
    tasks: list[tuple] = []
    for curve_entry in corpus["curves"]:
        for ext_entry in corpus["extensions"]:
            for ell in corpus["primes"]:
                tasks.append(("criterion", curve_entry, ext_entry, ell, verify, with_timings))
    if include_najman:
        cubic_entries = [e for e in corpus["extensions"]
                         if poly_from_json(e["defining_poly"]).degree == 3
                         and not is_galois_prime_degree(corpus_field(e))]
        for curve_entry in corpus["curves"]:
            for ext_entry in cubic_entries:
                tasks.append(("najman", curve_entry, ext_entry, None, verify, with_timings))
    return tasks


def run_harness(corpus: dict, jobs: int = 1, verify: bool = True,
                with_timings: bool = True, include_najman: bool = True) -> dict:
    """The full corpus sweep; results merge in input order regardless of the
    worker pool size."""
    tasks = plan_tasks(corpus, verify, with_timings, include_najman)
    if jobs > 1:
        with Pool(jobs) as pool:
            results = pool.map(_run_task_tuple, tasks)
    else:
        results = [_run_task_tuple(t) for t in tasks]
    summary = {"pass": 0, "fail": 0, "not_applicable": 0, "cap_exceeded": 0}
    for r in results:
        summary[r["status"]] += 1
    return {"schema_version": SCHEMA_VERSION, "tasks": results, "summary": summary}


def emit_report(report: dict, format: str = "json", with_timings: bool = True) -> str:
    """Serialize a harness report; json is canonical (sorted keys, fixed
    separators), text is one line per task carrying the result identifier."""
    from .serialize import dumps_canonical

    if format == "json":
        payload = report
        if not with_timings:
            payload = _without_timings(report)
        return dumps_canonical(payload)
    if format != "text":
        raise SpecError(f"unknown report format {format!r}")
    lines = []
    for t in report.get("tasks", []):
        rid = t.get("verdict", {}).get("result_id", t.get("kind", "?"))
        cell = f"{t.get('curve', '?')} x {t.get('extension', '?')}"
        ell = t.get("ell")
        ell_part = f" ell={ell}" if ell is not None else ""
        lines.append(f"{rid:>16}  {cell:<24}{ell_part:<8} {t['status'].upper()}")
    s = report.get("summary", {})
    lines.append(f"summary: pass={s.get('pass', 0)} fail={s.get('fail', 0)} "
                 f"not_applicable={s.get('not_applicable', 0)} "
                 f"cap_exceeded={s.get('cap_exceeded', 0)}")
    return "\n".join(lines)


def _without_timings(obj):
    if isinstance(obj, dict):
        return {k: _without_timings(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [_without_timings(v) for v in obj]
    return obj
