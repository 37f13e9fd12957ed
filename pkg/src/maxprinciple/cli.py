"""Command-line entry point.

Every command writes JSON.  Enumerative commands stream one JSON object per
line and finish with a summary object.  Exit codes: 0 on a clean run
(whatever the verdicts), 2 on malformed input, 3 on an internal invariant
breach.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, List, Optional, Sequence

import mpmath

from . import __version__
from .candidate import Candidate
from .case_analysis import (
    CASE_IDS,
    CaseParams,
    case_for_indices,
    classify,
    cross_check,
    predicted_leading,
    uncorrected_leading,
    sample_instance,
    theorem_sweep,
    unified_leading,
    verdict,
)
from .errors import InvariantBreach, MaxPrincipleError, TheoremViolationFound
from .exact_algebra import as_rational, format_rational
from .hk_polynomials import HKPoly
from .mpf_checker import SearchConfig, check_all, search_full
from .numeric import RationalQuantity, numeric_terms, trace_ratio_quantity
from .velocities import VELOCITY_NAMES, velocity

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_BREACH = 3

COMMANDS = ("check", "search", "case", "cross-check", "sweep", "eval")


class MalformedInput(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    json: Optional[str] = None
    output: Optional[str] = None
    workers: int = 1
    seed: int = 0
    sigma: Optional[str] = None
    gmax: Optional[int] = None
    hmax: Optional[int] = None
    coeff_range: Optional[str] = None
    grid: Optional[str] = None
    velocity: Optional[str] = None
    per_case: int = 50
    table: str = "corrected"
    text: bool = False
    timing: bool = False
    extra: dict = field(default_factory=dict)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_json(cfg: RunConfig, required: bool = True):
    if cfg.json is not None:
        text = cfg.json
    elif cfg.input is not None:
        try:
            if cfg.input == "-":
                text = sys.stdin.read()
            else:
                with open(cfg.input, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read {cfg.input}: {exc}") from None
    elif required:
        raise MalformedInput("this command needs --input or --json")
    else:
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


def _rational(value, what: str) -> Fraction:
    try:
        return as_rational(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise MalformedInput(f"bad {what} {value!r}") from None


def _sigma(cfg: RunConfig, fallback=None) -> Optional[Fraction]:
    if cfg.sigma is None:
        return None if fallback is None else _rational(fallback, "sigma")
    return _rational(cfg.sigma, "--sigma")


def _coeff_range(text: str):
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError:
        raise MalformedInput(f"--coeff-range wants 'lo,hi', got {text!r}") from None
    return lo, hi


def _candidate(data, sigma: Optional[Fraction]) -> Candidate:
    try:
        if sigma is not None and isinstance(data, dict) and "sigma" not in data:
            data = {**data, "sigma": format_rational(sigma)}
        cand = Candidate.from_json(data)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad candidate: {exc}") from None
    if sigma is not None:
        cand = cand.with_sigma(sigma)
    if cand.p.is_zero() or cand.q.is_zero():
        raise MalformedInput("p and q must both be nonzero")
    return cand


def _search_config(cfg: RunConfig, default_sigma) -> SearchConfig:
    data = _read_json(cfg, required=False) or {}
    if not isinstance(data, dict):
        raise MalformedInput("search config must be an object")
    over = {}
    if cfg.gmax is not None:
        over["g_max"] = cfg.gmax
    if cfg.hmax is not None:
        over["h_max"] = cfg.hmax
    if cfg.coeff_range is not None:
        over["coeff_min"], over["coeff_max"] = _coeff_range(cfg.coeff_range)
    sigma = _sigma(cfg)
    if sigma is not None:
        over["sigma"] = sigma
    over["workers"] = cfg.workers
    if "sigma" not in data and "sigma" not in over:
        over["sigma"] = as_rational(default_sigma)
    try:
        return SearchConfig.from_json(data, **over)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad search config: {exc}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_check(cfg: RunConfig, out: List[str]) -> int:
    cand = _candidate(_read_json(cfg), _sigma(cfg))
    out.append(_dump(check_all(cand).to_json()))
    return EXIT_OK


def cmd_search(cfg: RunConfig, out: List[str]) -> int:
    config = _search_config(cfg, 1)
    result = search_full(config, cfg.workers)
    for cand in result.passing:
        out.append(_dump(cand.to_json()))
    out.append(_dump(result.summary()))
    return EXIT_OK


def _case_params(data) -> CaseParams:
    try:
        k, l = int(data["k"]), int(data["l"])
        case_id = data.get("case") or case_for_indices(k, l)
        return CaseParams(case_id, int(data["g"]), int(data["h"]), k, l,
                          as_rational(data.get("c", 1)), as_rational(data.get("d", 1)))
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad case parameters: {exc}") from None


def cmd_case(cfg: RunConfig, out: List[str]) -> int:
    data = _read_json(cfg)
    if isinstance(data, dict) and "p" in data:
        cand = _candidate(data, _sigma(cfg))
        params = classify(cand.p, cand.q)
        sigma = _sigma(cfg, None)
    else:
        if not isinstance(data, dict):
            raise MalformedInput("case input must be an object")
        params = _case_params(data)
        sigma = _sigma(cfg)
    problems = params.problems()
    if problems:
        raise MalformedInput("; ".join(problems))
    if sigma is not None and sigma <= 1:
        raise MalformedInput("case analysis needs sigma > 1")
    v = verdict(params, sigma)
    out.append(v.explain() if cfg.text else _dump(v.to_json()))
    return EXIT_OK


_TABLES = {"corrected": predicted_leading, "uncorrected": uncorrected_leading, "unified": unified_leading}


def cmd_cross_check(cfg: RunConfig, out: List[str]) -> int:
    table = _TABLES.get(cfg.table)
    if table is None:
        raise MalformedInput(f"unknown table {cfg.table!r}")
    data = _read_json(cfg, required=False)
    if data is not None:
        cand = _candidate(data, _sigma(cfg))
        report = cross_check(cand, table)
        out.append(_dump(report.to_json()))
        return EXIT_OK if report.ok else EXIT_BREACH
    rng = random.Random(cfg.seed)
    sigmas = [Fraction(3, 2), Fraction(2), Fraction(5, 2)]
    totals = {"checked": 0, "mismatches": 0}
    for case_id in CASE_IDS:
        checked = bad = 0
        for _ in range(cfg.per_case):
            p, q = sample_instance(rng, case_id)
            sigma = rng.choice(sigmas)
            report = cross_check(Candidate(p, q, sigma), table)
            checked += 1
            if not report.ok:
                bad += 1
                out.append(_dump({"mismatch": report.to_json()}))
        out.append(_dump({"case": case_id, "checked": checked, "mismatches": bad}))
        totals["checked"] += checked
        totals["mismatches"] += bad
    out.append(_dump({"summary": True, "seed": cfg.seed, "table": cfg.table, **totals}))
    return EXIT_OK if totals["mismatches"] == 0 else EXIT_BREACH


def cmd_sweep(cfg: RunConfig, out: List[str]) -> int:
    config = _search_config(cfg, 2)
    if config.sigma <= 1:
        raise MalformedInput("sweep needs sigma > 1")
    summary = theorem_sweep(config.sigma, config, cfg.workers)
    for rec in summary.records:
        out.append(_dump(rec.to_json()))
    out.append(_dump(summary.to_json()))
    return EXIT_OK if not summary.inconsistent else EXIT_BREACH


def _grid(spec: str):
    try:
        lo, hi, n = spec.split(",")
        lo, hi, n = as_rational(lo), as_rational(hi), int(n)
    except (ValueError, ZeroDivisionError, AttributeError, TypeError):
        raise MalformedInput(f"--grid wants 'lo,hi,count', got {spec!r}") from None
    if n < 1 or lo <= 0 or hi < lo:
        raise MalformedInput("grid needs 0 < lo <= hi and count >= 1")
    if n == 1:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def cmd_eval(cfg: RunConfig, out: List[str]) -> int:
    data = _read_json(cfg)
    if not isinstance(data, dict):
        raise MalformedInput("eval input must be an object")
    name = cfg.velocity or data.get("velocity")
    if name not in VELOCITY_NAMES:
        raise MalformedInput(f"velocity must be one of {list(VELOCITY_NAMES)}")
    sigma = _sigma(cfg, data.get("sigma"))
    try:
        vel = velocity(name, sigma)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    qspec = data.get("quantity")
    if not isinstance(qspec, dict):
        raise MalformedInput("eval input needs a 'quantity' object")
    if qspec.get("builtin") == "trA-ratio":
        quantity = trace_ratio_quantity(_rational(qspec.get("sigma", sigma if sigma is not None else 1), "sigma"))
    elif "p" in qspec and "q" in qspec:
        try:
            quantity = RationalQuantity(HKPoly.from_json(qspec["p"]), HKPoly.from_json(qspec["q"]))
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad quantity: {exc}") from None
    else:
        raise MalformedInput("quantity must be {'p':…, 'q':…} or {'builtin': 'trA-ratio'}")
    points = _grid(cfg.grid or data.get("grid", "1/5,4,20"))
    worst = [None, None, None]
    count = skipped = 0
    for a in points:
        for b in points:
            if a == b:
                continue
            try:
                vals = numeric_terms(vel, quantity, a, b)
            except MaxPrincipleError as exc:
                skipped += 1
                out.append(_dump({"l1": format_rational(a), "l2": format_rational(b), "skipped": str(exc)}))
                continue
            count += 1
            strs = [mpmath.nstr(v, 15) for v in vals]
            out.append(_dump({"l1": format_rational(a), "l2": format_rational(b),
                              "C_w": strs[0], "G_w_12": strs[1], "G_w_21": strs[2]}))
            for i, v in enumerate(vals):
                if worst[i] is None or v > worst[i]:
                    worst[i] = v
    out.append(_dump({
        "summary": True,
        "velocity": vel.describe(),
        "points": count,
        "skipped": skipped,
        "max_C_w": None if worst[0] is None else mpmath.nstr(worst[0], 15),
        "max_G_w_12": None if worst[1] is None else mpmath.nstr(worst[1], 15),
        "max_G_w_21": None if worst[2] is None else mpmath.nstr(worst[2], 15),
    }))
    return EXIT_OK


HANDLERS = {
    "check": cmd_check,
    "search": cmd_search,
    "case": cmd_case,
    "cross-check": cmd_cross_check,
    "sweep": cmd_sweep,
    "eval": cmd_eval,
}


def run(cfg: RunConfig, stdout: Optional[IO[str]] = None, stderr: Optional[IO[str]] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    lines: List[str] = []
    start = time.perf_counter()
    try:
        code = HANDLERS[cfg.command](cfg, lines)
    except MalformedInput as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    except TheoremViolationFound as exc:
        stderr.write(f"invariant breach: {exc}\n")
        stderr.write(_dump({"candidate": exc.candidate.to_json(), "report": exc.report.to_json()}) + "\n")
        return EXIT_BREACH
    except InvariantBreach as exc:
        stderr.write(f"invariant breach: {exc}\n")
        return EXIT_BREACH
    text = "".join(line + "\n" for line in lines)
    if cfg.output:
        try:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            stderr.write(f"error: cannot write {cfg.output}: {exc}\n")
            return EXIT_MALFORMED
    else:
        stdout.write(text)
    if cfg.timing:
        stderr.write(_dump({"wall_clock_s": round(time.perf_counter() - start, 3)}) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxprinciple",
        description="Exact checks of maximum-principle quantities for K^sigma flows.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=False):
        src = p.add_mutually_exclusive_group(required=needs_input)
        src.add_argument("--input", help="JSON input file ('-' for stdin)")
        src.add_argument("--json", help="inline JSON input")
        p.add_argument("--output", help="write results here instead of stdout")
        p.add_argument("--sigma", help="flow exponent as an exact rational, e.g. 3/2")
        p.add_argument("--timing", action="store_true", help="report wall-clock on stderr")

    def bounds(p):
        p.add_argument("--gmax", type=int, help="largest degree of p")
        p.add_argument("--hmax", type=int, help="largest degree of q")
        p.add_argument("--coeff-range", help="integer coefficient range 'lo,hi'")
        p.add_argument("--workers", type=int, default=1, help="worker processes")

    p = sub.add_parser("check", help="certify all conditions for one candidate")
    common(p, needs_input=True)

    p = sub.add_parser("search", help="exhaustive search for passing candidates")
    common(p)
    bounds(p)

    p = sub.add_parser("case", help="case classification and contradiction chain")
    common(p, needs_input=True)
    p.add_argument("--text", action="store_true", help="human-readable chain")

    p = sub.add_parser("cross-check", help="closed forms against brute force")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--per-case", type=int, default=50)
    p.add_argument("--table", choices=sorted(_TABLES), default="corrected")

    p = sub.add_parser("sweep", help="desk-scale nonexistence sweep (sigma > 1)")
    common(p)
    bounds(p)

    p = sub.add_parser("eval", help="numeric constant and gradient terms on a grid")
    common(p, needs_input=True)
    p.add_argument("--velocity", choices=VELOCITY_NAMES)
    p.add_argument("--grid", help="'lo,hi,count' for both curvatures")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code not in (0, None) else EXIT_OK
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    if getattr(ns, "workers", 1) is not None and getattr(ns, "workers", 1) < 1:
        sys.stderr.write("error: --workers must be positive\n")
        return EXIT_MALFORMED
    return run(RunConfig(**fields))


if __name__ == "__main__":
    sys.exit(main())
