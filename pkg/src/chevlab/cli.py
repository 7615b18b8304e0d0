"""Batch command-line interface: verification campaigns with JSON reports.

Exit codes: 0 = every verdict true, 1 = some verdict false, 2 = a task
errored or the input failed validation.  Reports are deterministic for a
fixed seed and input; wall-clock timings are only embedded on request so
that default reports are byte-identical across runs.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from .constants import compute_table, normalize_signs
from .factorize import (
    CertifiedFactorization,
    ParabolicData,
    condition_star,
    levi_commutator_check,
    long_root_decomposition,
    long_word_factor_count,
    main_lemma_word,
    unit_decompose,
)
from .reps import get_representation, verify_steinberg
from .rings import Ideal, ParseError, Ring, RingError, parse_ideal, parse_ring
from .roots import MainLemmaCase, get_system
from .subgroups import (
    DEFAULT_CANDIDATE_BOUND,
    DEFAULT_ELEMENT_BOUND,
    verify_theorem,
)
from .words import certificate_to_json, evaluate, word_to_sexpr

SYSTEMS = ("A2", "C2", "G2")
STATEMENTS = ("T1", "T2", "T3", "O1", "O2")


class TaskError(Exception):
    pass


def _require_system(tag: str) -> str:
    if tag not in SYSTEMS:
        raise TaskError(f"unknown system {tag!r}; expected one of {SYSTEMS}")
    return tag


def _finite_ring(spec: str) -> Ring:
    ring = parse_ring(spec)
    if ring.kind != "Zn":
        raise TaskError(f"this task needs a finite ring Z/n, got {spec!r}")
    return ring


# ---------------------------------------------------------------------------
# task implementations; each returns (result-dict, verdict-bool)


def task_verify_steinberg(params: dict) -> tuple[dict, bool]:
    tag = _require_system(params["type"])
    report = verify_steinberg(get_representation(tag))
    return (
        {
            "system": tag,
            "passed": report.passed,
            "counts": report.counts(),
        },
        report.passed,
    )


def task_verify_chevalley(params: dict) -> tuple[dict, bool]:
    tag = _require_system(params["type"])
    rep = get_representation(tag)
    table = compute_table(rep)
    cases = [c for c in MainLemmaCase if c.system_tag == tag]
    displays = {}
    ok = True
    for case in cases:
        sn = normalize_signs(table, case)
        displays[case.value] = {
            "pair": [sn.pair[0].name, sn.pair[1].name],
            "constants": [
                {"i": i, "j": j, "root": r.name, "N": n} for i, j, r, n in sn.display
            ],
            "aux_constant": sn.aux_constant,
        }
    magnitudes = sorted({abs(n) for n in table.entries.values()})
    return (
        {
            "system": tag,
            "normalized_displays": displays,
            "constant_magnitudes": magnitudes,
        },
        ok,
    )


def task_verify_main_lemma(params: dict) -> tuple[dict, bool]:
    case = MainLemmaCase.from_string(params["case"])
    rep = get_representation(case.system_tag)
    if params.get("ring"):
        ring = _finite_ring(params["ring"])
        ideal_i = parse_ideal(ring, str(params.get("ideal_i", params.get("ideal", "1"))))
        ideal_j = parse_ideal(ring, str(params.get("ideal_j", params.get("ideal", "1"))))
        checked = 0
        failures = []
        from .rings import enumerate_elements

        for xi in ideal_i.element_values():
            for zeta in ideal_j.element_values():
                for eta in enumerate_elements(ring):
                    fact = main_lemma_word(case, xi, zeta, eta, ideal_i, ideal_j)
                    checked += 1
                    if not fact.verify(rep, ring, ideal_i, ideal_j):
                        failures.append([str(xi), str(zeta), str(eta)])
        result = {
            "case": case.value,
            "mode": "finite",
            "ring": str(ring),
            "ideal_i": str(ideal_i),
            "ideal_j": str(ideal_j),
            "triples_checked": checked,
            "failures": failures,
            "condition_star": condition_star(case.system_tag, ring).to_json(),
        }
        return result, not failures
    ring = Ring.polynomial(Ring.integers(), ("xi", "zeta", "eta"))
    xi, zeta, eta = ring.vars()
    ideal_i = Ideal.of(ring, [xi])
    ideal_j = Ideal.of(ring, [zeta])
    fact = main_lemma_word(case, xi, zeta, eta, ideal_i, ideal_j)
    ok = fact.verify(rep, ring, ideal_i, ideal_j)
    return (
        {
            "case": case.value,
            "mode": "symbolic",
            "factors": len(fact.factors),
            "identity_and_certificates": ok,
        },
        ok,
    )


def task_verify_long_root(params: dict) -> tuple[dict, bool]:
    tag = _require_system(params["type"])
    system = get_system(tag)
    rep = get_representation(tag)
    if tag == "A2":
        raise TaskError("A2 has no short roots; nothing to decompose")
    if params.get("ring"):
        ring = _finite_ring(params["ring"])
        ideal = parse_ideal(ring, str(params["ideal"]))
        failures = []
        checked = 0
        max_factors = 0
        for beta in system.short_roots:
            for xi in ideal.element_values():
                word = long_root_decomposition(beta, xi, ideal, ring)
                checked += 1
                max_factors = max(max_factors, long_word_factor_count(word))
                if evaluate(word, rep, ring) != rep.x(beta, xi):
                    failures.append([beta.name, str(xi)])
        result = {
            "system": tag,
            "mode": "finite",
            "ring": str(ring),
            "ideal": str(ideal),
            "decompositions_checked": checked,
            "max_factor_count": max_factors,
            "failures": failures,
        }
        if tag == "G2":
            result["unit_decomposition"] = [
                [str(t), str(r)] for t, r in unit_decompose(ring)
            ]
        return result, not failures
    ring = Ring.polynomial(Ring.integers(), ("xi",))
    (xi,) = ring.vars()
    ideal = Ideal.of(ring, [xi])
    failures = []
    max_factors = 0
    for beta in system.short_roots:
        word = long_root_decomposition(beta, xi, ideal, ring)
        max_factors = max(max_factors, long_word_factor_count(word))
        if evaluate(word, rep, ring) != rep.x(beta, xi):
            failures.append(beta.name)
    return (
        {
            "system": tag,
            "mode": "symbolic",
            "short_roots_checked": len(system.short_roots),
            "max_factor_count": max_factors,
            "failures": failures,
        },
        not failures,
    )


def task_verify_levi(params: dict) -> tuple[dict, bool]:
    tag = _require_system(params["type"])
    ring = _finite_ring(params["ring"])
    ideal_i = parse_ideal(ring, str(params["ideal_i"]))
    ideal_j = parse_ideal(ring, str(params["ideal_j"]))
    samples = int(params.get("samples", 1000))
    seed = int(params.get("seed", 0))
    system = get_system(tag)
    sides = {}
    ok = True
    for r in (1, 2):
        parabolic = ParabolicData.for_simple(system, r)
        for minus in (False, True):
            rep = levi_commutator_check(
                parabolic, ideal_i, ideal_j, ring, samples, seed=seed, minus_side=minus
            )
            key = f"r={r}," + ("U-" if minus else "U+")
            sides[key] = {"samples": rep.samples, "violations": rep.violations}
            ok = ok and rep.passed
    return (
        {
            "system": tag,
            "ring": str(ring),
            "ideal_i": str(ideal_i),
            "ideal_j": str(ideal_j),
            "seed": seed,
            "sides": sides,
        },
        ok,
    )


def task_bruteforce(params: dict) -> tuple[dict, bool]:
    stmt = params["stmt"]
    if stmt not in STATEMENTS:
        raise TaskError(f"unknown statement {stmt!r}; expected one of {STATEMENTS}")
    tag = _require_system(params["type"])
    if tag == "G2":
        raise TaskError(
            "G2 subgroup enumeration is out of desk scale (congruence kernels "
            "of order ~3^14 in 21x21 matrices); G2 is covered by the symbolic "
            "and finite-ring identity layers instead"
        )
    ring = _finite_ring(params["ring"])
    ideal_i = parse_ideal(ring, str(params["ideal_i"]))
    ideal_j = parse_ideal(ring, str(params.get("ideal_j", params["ideal_i"])))
    bound = int(params.get("bound", DEFAULT_ELEMENT_BOUND))
    candidate_bound = int(params.get("candidate_bound", DEFAULT_CANDIDATE_BOUND))
    report = verify_theorem(stmt, tag, ring, ideal_i, ideal_j, bound, candidate_bound)
    if report.error is not None:
        return report.to_json(), None
    return report.to_json(), report.verdict is True


def task_dump_constants(params: dict) -> tuple[dict, bool]:
    tag = _require_system(params["type"])
    table = compute_table(get_representation(tag))
    return {"system": tag, "constants": table.to_records()}, True


def task_dump_generators(params: dict) -> tuple[dict, bool]:
    tag = _require_system(params["type"])
    ring = _finite_ring(params["ring"])
    rep = get_representation(tag)
    from .rings import enumerate_elements

    out = []
    for root in rep.system.roots:
        for t in enumerate_elements(ring):
            g = rep.x(root, t)
            out.append(
                {
                    "root": root.name,
                    "t": str(t),
                    "blocks": [b.tolist() for b in g.blocks],
                }
            )
    return {"system": tag, "ring": str(ring), "generators": out}, True


def task_factorize_main_lemma(params: dict) -> tuple[dict, bool]:
    case = MainLemmaCase.from_string(params["case"])
    rep = get_representation(case.system_tag)
    ring = Ring.polynomial(Ring.integers(), ("xi", "zeta", "eta"))
    xi, zeta, eta = ring.vars()
    ideal_i = Ideal.of(ring, [xi])
    ideal_j = Ideal.of(ring, [zeta])
    fact = main_lemma_word(case, xi, zeta, eta, ideal_i, ideal_j)
    ok = fact.verify(rep, ring, ideal_i, ideal_j)
    return (
        {
            "case": case.value,
            "target": word_to_sexpr(fact.target),
            "factors": [
                {"word": word_to_sexpr(w), "certificate": certificate_to_json(c)}
                for w, c in fact.factors
            ],
            "verdict": ok,
        },
        ok,
    )


def task_factorize_long_root(params: dict) -> tuple[dict, bool]:
    tag = _require_system(params["type"])
    system = get_system(tag)
    rep = get_representation(tag)
    ring = _finite_ring(params["ring"])
    ideal = parse_ideal(ring, str(params["ideal"]))
    out = []
    ok = True
    for beta in system.short_roots:
        for xi in ideal.element_values():
            word = long_root_decomposition(beta, xi, ideal, ring)
            good = evaluate(word, rep, ring) == rep.x(beta, xi)
            ok = ok and good
            out.append(
                {
                    "root": beta.name,
                    "xi": str(xi),
                    "word": word_to_sexpr(word),
                    "factors": long_word_factor_count(word),
                    "verdict": good,
                }
            )
    return {"system": tag, "ring": str(ring), "ideal": str(ideal), "words": out}, ok


TASKS = {
    "verify-steinberg": task_verify_steinberg,
    "verify-chevalley": task_verify_chevalley,
    "verify-main-lemma": task_verify_main_lemma,
    "verify-long-root": task_verify_long_root,
    "verify-levi": task_verify_levi,
    "bruteforce": task_bruteforce,
    "dump-constants": task_dump_constants,
    "dump-generators": task_dump_generators,
    "factorize-main-lemma": task_factorize_main_lemma,
    "factorize-long-root": task_factorize_long_root,
}


def validate_task(command: str, params: dict) -> None:
    """Cheap validation of a task before anything runs."""
    if command not in TASKS:
        raise TaskError(f"unknown command {command!r}")
    if "type" in params:
        _require_system(params["type"])
    if "case" in params:
        MainLemmaCase.from_string(params["case"])
    if "ring" in params and params["ring"]:
        ring = parse_ring(params["ring"])
        for key in ("ideal", "ideal_i", "ideal_j"):
            if key in params and params[key] is not None:
                parse_ideal(ring, str(params[key]))
    if command == "bruteforce":
        if params.get("stmt") not in STATEMENTS:
            raise TaskError(f"bruteforce needs --stmt from {STATEMENTS}")
        if params.get("type") == "G2":
            raise TaskError("bruteforce does not support G2 (out of desk scale)")
        if "ring" not in params:
            raise TaskError("bruteforce needs --ring")


def run_campaign(tasks: list[dict], seed: int, with_timings: bool) -> dict:
    """Validate every task, then run them in order."""
    for entry in tasks:
        validate_task(entry["command"], entry.get("params", {}))
    results = []
    timings = []
    any_false = False
    any_error = False
    for entry in tasks:
        command = entry["command"]
        params = dict(entry.get("params", {}))
        params.setdefault("seed", seed)
        start = time.monotonic()
        try:
            result, ok = TASKS[command](params)
            if ok is None:
                status = "error"
                any_error = True
            else:
                status = "ok" if ok else "false"
                any_false = any_false or not ok
        except (TaskError, RingError, ParseError) as exc:
            result = {"error": f"{type(exc).__name__}: {exc}"}
            status = "error"
            any_error = True
        except Exception as exc:  # noqa: BLE001 - reported, exit code 2
            result = {"error": f"{type(exc).__name__}: {exc}"}
            status = "error"
            any_error = True
        timings.append(round(time.monotonic() - start, 3))
        results.append(
            {
                "command": command,
                "params": {k: v for k, v in params.items()},
                "status": status,
                "result": result,
            }
        )
    report = {
        "version": "0.1.0",
        "seed": seed,
        "threads": os.environ.get("CHEVLAB_THREADS", "1"),
        "tasks": results,
    }
    report["input_hash"] = hashlib.sha256(
        json.dumps(tasks, sort_keys=True).encode()
    ).hexdigest()
    if with_timings:
        report["timings_s"] = timings
    report["exit_code"] = 2 if any_error else (1 if any_false else 0)
    return report


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    for entry in report["tasks"]:
        marker = {"ok": "ok  ", "false": "FALSE", "error": "ERROR"}[entry["status"]]
        print(f"[{marker}] {entry['command']} {json.dumps(entry['params'], sort_keys=True)}")
    print(f"exit_code={report['exit_code']} tasks={len(report['tasks'])}")
    if not path:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--report", help="write the JSON report to this path")
    common.add_argument(
        "--timings", action="store_true", help="embed wall-clock timings in the report"
    )
    parser = argparse.ArgumentParser(
        prog="chevlab",
        description="exact-arithmetic lab for rank-2 elementary Chevalley groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="identity-layer verification")
    verify_sub = verify.add_subparsers(dest="what", required=True)
    for what in ("steinberg", "chevalley"):
        p = verify_sub.add_parser(what, parents=[common])
        p.add_argument("--type", required=True, choices=SYSTEMS)
    p = verify_sub.add_parser("main-lemma", parents=[common])
    p.add_argument("--case", required=True)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--ring")
    p.add_argument("--ideal-i", dest="ideal_i")
    p.add_argument("--ideal-j", dest="ideal_j")
    p = verify_sub.add_parser("long-root", parents=[common])
    p.add_argument("--type", required=True, choices=SYSTEMS)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--ring")
    p.add_argument("--ideal")
    p = verify_sub.add_parser("levi", parents=[common])
    p.add_argument("--type", required=True, choices=SYSTEMS)
    p.add_argument("--ring", required=True)
    p.add_argument("--ideal-i", dest="ideal_i", required=True)
    p.add_argument("--ideal-j", dest="ideal_j", required=True)
    p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("bruteforce", parents=[common], help="brute-force subgroup statements")
    p.add_argument("--stmt", required=True, choices=STATEMENTS)
    p.add_argument("--type", required=True, choices=SYSTEMS)
    p.add_argument("--ring", required=True)
    p.add_argument("--ideal-i", dest="ideal_i", required=True)
    p.add_argument("--ideal-j", dest="ideal_j")
    p.add_argument("--bound", type=int, default=DEFAULT_ELEMENT_BOUND)
    p.add_argument("--candidate-bound", type=int, default=DEFAULT_CANDIDATE_BOUND)

    p = sub.add_parser("dump-constants", parents=[common])
    p.add_argument("--type", required=True, choices=SYSTEMS)
    p = sub.add_parser("dump-generators", parents=[common])
    p.add_argument("--type", required=True, choices=SYSTEMS)
    p.add_argument("--ring", required=True)

    fact = sub.add_parser("factorize", help="emit certified factorizations")
    fact_sub = fact.add_subparsers(dest="what", required=True)
    p = fact_sub.add_parser("main-lemma", parents=[common])
    p.add_argument("--case", required=True)
    p.add_argument("--symbolic", action="store_true")
    p = fact_sub.add_parser("long-root", parents=[common])
    p.add_argument("--type", required=True, choices=SYSTEMS)
    p.add_argument("--ring", required=True)
    p.add_argument("--ideal", required=True)

    p = sub.add_parser("campaign", help="run a JSON campaign file")
    camp_sub = p.add_subparsers(dest="what", required=True)
    runp = camp_sub.add_parser("run", parents=[common])
    runp.add_argument("file", help="campaign JSON file")
    runp.add_argument("--output", help="report output path")
    return parser


def _args_to_task(args: argparse.Namespace) -> dict:
    command = args.command
    if command in ("verify", "factorize"):
        command = f"{command}-{args.what}"
    params = {}
    for key in (
        "type",
        "case",
        "ring",
        "ideal",
        "ideal_i",
        "ideal_j",
        "stmt",
        "samples",
        "bound",
        "candidate_bound",
    ):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if getattr(args, "symbolic", False):
        params.pop("ring", None)
    return {"command": command, "params": params}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "campaign":
        try:
            with open(args.file) as fh:
                spec = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"cannot read campaign: {exc}", file=sys.stderr)
            return 2
        tasks = spec.get("tasks", [])
        seed = int(spec.get("seed", args.seed))
        try:
            report = run_campaign(tasks, seed, args.timings)
        except (TaskError, RingError, ParseError) as exc:
            print(f"campaign validation failed: {exc}", file=sys.stderr)
            return 2
        _emit(report, args.output or args.report)
        return report["exit_code"]
    task = _args_to_task(args)
    try:
        report = run_campaign([task], args.seed, args.timings)
    except (TaskError, RingError, ParseError) as exc:
        print(f"invalid task: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.report)
    return report["exit_code"]


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
