"""Command-line front end.

Exit codes: 0 when every requested condition is decided, 2 when some verdict
is unknown, 1 on usage errors, internal errors and corpus mismatches.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .bernstein import NotApplicable, bs_quasihomogeneous
from .conditions import (
    CHECKS,
    CONDITIONS,
    ArrangementSpec,
    corpdeux_decision,
    decide_A_inv,
    lattice_from_verdicts,
    propagate_implications,
    run_condition,
    verify_generic_arrangement,
)
from .conormal import arrangement_ann_generators, arrangement_twisted_element, condition_W, conormal_ideal
from .groebner import DEFAULT_MAX_STEPS, resource_limits
from .symbolic import ParseError, Poly, Ring, WeightSystem, parse_factors, parse_poly
from .verdict import Status, Verdict
from .weyl import NotFound, annihilates, parse_operator, solve_functional_equation, with_s

DEFAULT_TIMEOUT = 60.0
RESOURCE_MARK = "resource limit:"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# reports

def build_report(inp: Dict[str, Any], verdicts: Dict[str, Any], args) -> Dict[str, Any]:
    hit = sorted(name for name, v in verdicts.items()
                 if v.get("verdict") == Status.UNKNOWN.value and RESOURCE_MARK in v.get("reason", ""))
    return {
        "input": inp,
        "verdicts": verdicts,
        "limits": {"max_steps": args.max_steps, "timeout": args.timeout, "hit": hit},
        "version": __version__,
    }


def emit(report: Dict[str, Any], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2, default=str) + "\n")
        return
    inp = report["input"]
    if "poly" in inp:
        out.write(f"h = {inp['poly']}  over {','.join(inp.get('vars', []))}\n")
    for name, v in report["verdicts"].items():
        rules = ", ".join(s["rule"] for s in v.get("trace", []))
        line = f"{name}: {v['verdict']}"
        if rules:
            line += f"  [{rules}]"
        if v.get("reason"):
            line += f"  ({v['reason']})"
        out.write(line + "\n")
        cert = v.get("certificate") or {}
        for key in ("b", "roots", "operator", "unit", "witness_root", "generators"):
            if key in cert:
                out.write(f"    {key}: {cert[key]}\n")
    if report["limits"]["hit"]:
        out.write(f"resource limits hit: {', '.join(report['limits']['hit'])}\n")
    if "timing" in report:
        for k, t in report["timing"].items():
            out.write(f"    time {k}: {t:.3f}s\n")


def exit_code(verdicts: Dict[str, Dict[str, Any]]) -> int:
    return 2 if any(v.get("verdict") == Status.UNKNOWN.value for v in verdicts.values()) else 0


# ---------------------------------------------------------------------------
# input

def read_input(args) -> Tuple[Ring, List[Poly], Dict[str, Any]]:
    factors = getattr(args, "factor", None) or []
    if args.vars:
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
    else:
        names = infer_vars([args.poly or ""] + list(factors))
        if not names:
            raise UsageError("no variables found; pass --vars")
    ring = Ring.from_names(names)
    if factors and args.poly:
        raise UsageError("give either --poly or --factor, not both")
    if factors:
        fs = [parse_poly(t, ring) for t in factors]
    elif args.poly:
        fs = parse_factors(args.poly, ring)
    else:
        raise UsageError("one of --poly or --factor is required")
    fs = [f for f in fs if not (f.is_constant() and f.constant_term() != 0)] or fs
    h = ring.one()
    for f in fs:
        h = h * f
    inp = {"vars": names, "poly": str(h), "factors": [str(f) for f in fs]}
    if h.is_zero() or h.constant_term() != 0:
        raise UsageError("h must be nonzero and vanish at the origin")
    return ring, fs, inp


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def infer_vars(texts: Sequence[str]) -> List[str]:
    """Identifiers occurring in the inputs, in natural order (x2 before x10)."""
    found = set()
    for t in texts:
        found.update(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", t))
    return sorted(found, key=_natural_key)


def parse_weights(text: Optional[str], ring: Ring) -> Optional[WeightSystem]:
    if not text:
        return None
    vals = [Fraction(t.strip()) for t in text.split(",")]
    if len(vals) != len(ring.base_names):
        raise UsageError("--weights needs one value per variable")
    return WeightSystem(tuple(ring.base_names), tuple(vals))


def _timed(name: str, fn, timing: Dict[str, float], args):
    t = time.perf_counter()
    with resource_limits(args.max_steps, args.timeout):
        out = fn()
    timing[name] = time.perf_counter() - t
    return out


# ---------------------------------------------------------------------------
# commands

def cmd_check(args) -> Tuple[Dict[str, Any], int]:
    ring, fs, inp = read_input(args)
    names = [c.strip().upper() for c in args.conditions.split(",") if c.strip()]
    bad = [c for c in names if c not in CHECKS]
    if bad:
        raise UsageError(f"unknown conditions {bad}; expected a subset of {','.join(CHECKS)}")
    inp["conditions"] = names
    timing: Dict[str, float] = {}
    vs = {c: _timed(c, lambda c=c: run_condition(c, fs), timing, args) for c in names}
    verdicts = {c: v.to_json() for c, v in vs.items()}
    report = build_report(inp, verdicts, args)
    try:
        closed = propagate_implications(lattice_from_verdicts(vs))
        report["implied"] = closed.as_dict()
    except ValueError as exc:
        report["implied"] = {"error": str(exc)}
    if args.timing:
        report["timing"] = timing
    return report, exit_code(verdicts)


def cmd_bfun(args) -> Tuple[Dict[str, Any], int]:
    ring, fs, inp = read_input(args)
    h = ring.one()
    for f in fs:
        h = h * f
    inp.update(max_order=args.max_order, max_coeff_deg=args.max_coeff_deg, max_bdeg=args.max_bdeg)
    timing: Dict[str, float] = {}
    verdicts: Dict[str, Any] = {}
    try:
        eq = _timed("search", lambda: solve_functional_equation(
            h, max_order=args.max_order, max_coeff_deg=args.max_coeff_deg, max_bdeg=args.max_bdeg), timing, args)
    except NotFound as exc:
        verdicts["functional-equation"] = Verdict.unknown(str(exc)).to_json()
        verdicts["B"] = Verdict.unknown("no functional equation within bounds").to_json()
    except Exception as exc:
        if RESOURCE_MARK not in str(exc):
            raise
        verdicts["functional-equation"] = Verdict.unknown(str(exc)).to_json()
        verdicts["B"] = Verdict.unknown(str(exc)).to_json()
    else:
        cert = {"b": str(eq.b), "roots": [str(r) for r in sorted(eq.b.root_set())],
                "operator": str(eq.operator), "verified": eq.verify()}
        verdicts["functional-equation"] = Verdict.holds(
            "functional-equation-search", "b(s) h^s = P(s) h^(s+1) verified exactly", certificate=cert).to_json()
        if [r for r in eq.b.integral_roots() if r <= -2]:
            verdicts["B"] = Verdict.unknown("the found b has an integral root < -1 and may not be minimal").to_json()
        else:
            verdicts["B"] = Verdict.holds("functional-equation-search",
                                          "the b-function divides the found b, whose only integral root is -1",
                                          certificate={"b": str(eq.b)}).to_json()
    try:
        qh = bs_quasihomogeneous(h)
        verdicts["closed-form"] = Verdict.holds("quasi-homogeneous", "closed formula",
                                                certificate={"b": str(qh)}).to_json()
    except NotApplicable:
        pass
    report = build_report(inp, verdicts, args)
    if args.timing:
        report["timing"] = timing
    return report, exit_code({k: v for k, v in verdicts.items() if k != "B"})


def cmd_arrangement(args) -> Tuple[Dict[str, Any], int]:
    ring, fs, inp = read_input(args)
    w = parse_weights(args.weights, ring)
    if w is not None:
        inp["weights"] = w.as_dict()
    timing: Dict[str, float] = {}
    spec = ArrangementSpec(tuple(fs))
    verdicts = {"generic": _timed("generic", lambda: verify_generic_arrangement(spec), timing, args).to_json()}
    verdicts["A_INV"] = _timed("A_INV", lambda: decide_A_inv(spec), timing, args).to_json()
    if len(fs) == 2:
        verdicts["pair-criterion"] = _timed(
            "pair", lambda: corpdeux_decision(fs[0], fs[1], w), timing, args).to_json()
    report = build_report(inp, verdicts, args)
    if args.timing:
        report["timing"] = timing
    return report, exit_code(verdicts)


def cmd_verify_ann(args) -> Tuple[Dict[str, Any], int]:
    ring, fs, inp = read_input(args)
    if len(fs) < 2 and not args.operator:
        raise UsageError("arrangement annihilators need at least two factors")
    d = args.distinguished - 1
    if not 0 <= d < len(fs):
        raise UsageError("--distinguished is a 1-based factor index")
    inp["distinguished"] = args.distinguished
    elem = arrangement_twisted_element(fs, d)
    if args.operator:
        ops = [parse_operator(t, with_s(ring)) for t in args.operator]
        inp["operators"] = list(args.operator)
    else:
        ops = arrangement_ann_generators(fs, d)
    timing: Dict[str, float] = {}
    results = _timed("verify", lambda: [annihilates(P, elem) for P in ops], timing, args)
    cert = {"element": str(elem), "operators": [str(P) for P in ops], "annihilates": results}
    if all(results):
        v = Verdict.holds("annihilation", "every operator kills the element exactly", certificate=cert)
    else:
        v = Verdict.fails("annihilation", "some operator leaves a nonzero residual", certificate=cert)
    verdicts = {"annihilation": v.to_json()}
    report = build_report(inp, verdicts, args)
    if args.timing:
        report["timing"] = timing
    return report, exit_code(verdicts)


def cmd_conormal(args) -> Tuple[Dict[str, Any], int]:
    ring, fs, inp = read_input(args)
    h = ring.one()
    for f in fs:
        h = h * f
    timing: Dict[str, float] = {}
    W = _timed("conormal", lambda: conormal_ideal(h), timing, args)
    gens = [str(g) for g in W.basis]
    verdicts = {
        "conormal": Verdict.holds("elimination", "closure of {(x, lambda dh)}",
                                  certificate={"generators": gens}).to_json(),
        "W": _timed("W", lambda: condition_W(h), timing, args).to_json(),
    }
    report = build_report(inp, verdicts, args)
    if args.timing:
        report["timing"] = timing
    return report, exit_code(verdicts)


# ---------------------------------------------------------------------------
# corpus

def _fixture_files(path: str) -> List[Path]:
    p = Path(path)
    if not p.exists() and p.name.rstrip("/") == "fixtures":
        p = Path(str(resources.files("dcond") / "fixtures"))
    if p.is_file():
        return [p]
    if not p.is_dir():
        raise UsageError(f"no fixtures at {path}")
    return sorted(p.glob("*.toml"))


def load_cases(path: str) -> List[Dict[str, Any]]:
    cases = []
    for f in _fixture_files(path):
        with open(f, "rb") as fh:
            data = tomllib.load(fh)
        for i, case in enumerate(data.get("case", [])):
            case = dict(case)
            case.setdefault("name", f"{f.stem}[{i}]")
            case["file"] = f.name
            cases.append(case)
    return cases


def run_case(case: Dict[str, Any], max_steps: int = DEFAULT_MAX_STEPS,
             timeout: float = DEFAULT_TIMEOUT) -> Dict[str, Any]:
    """Run one stanza.

    Keys of ``expect`` are check names (run directly) or lattice conditions,
    read off the closure of the checks listed under ``checks``.
    """
    expect = {str(k): str(v).lower() for k, v in case.get("expect", {}).items()}
    if case.get("documentation"):
        return {"status": "skipped", "expected": expect, "got": {}, "note": case.get("note", "")}
    bad = [k for k in expect if k not in CHECKS and k not in CONDITIONS]
    if bad:
        raise ValueError(f"case {case.get('name')}: unknown conditions {bad}")
    ring = Ring.from_names(case["vars"])
    if "factors" in case:
        fs = [parse_poly(t, ring) for t in case["factors"]]
    else:
        fs = parse_factors(case["poly"], ring)
    names = [k for k in expect if k in CHECKS]
    names += [c for c in case.get("checks", []) if c not in names]
    vs = {}
    for name in names:
        with resource_limits(max_steps, timeout):
            vs[name] = run_condition(name, fs)
    got = {k: v.status.value for k, v in vs.items() if k in expect}
    derived = [k for k in expect if k not in CHECKS]
    if derived:
        closed = propagate_implications(lattice_from_verdicts(vs))
        for k in derived:
            got[k] = closed.get(k).value
    return {"status": "match" if got == expect else "mismatch", "expected": expect, "got": got}


def _run_case_star(a):
    return run_case(*a)


def cmd_corpus(args) -> Tuple[Dict[str, Any], int]:
    cases = load_cases(args.path)
    jobs = [(c, args.max_steps, args.timeout) for c in cases]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_case_star, jobs))
    else:
        results = [run_case(*j) for j in jobs]
    verdicts = {}
    for c, r in zip(cases, results):
        verdicts[f"{c['file']}:{c['name']}"] = r
    mismatches = [k for k, r in verdicts.items() if r["status"] == "mismatch"]
    report = {
        "input": {"corpus": args.path, "cases": len(cases)},
        "verdicts": verdicts,
        "limits": {"max_steps": args.max_steps, "timeout": args.timeout, "hit": []},
        "version": __version__,
        "summary": {"match": sum(r["status"] == "match" for r in results),
                    "mismatch": len(mismatches),
                    "skipped": sum(r["status"] == "skipped" for r in results)},
    }
    return report, (1 if mismatches else 0)


def emit_corpus(report: Dict[str, Any], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2, default=str) + "\n")
        return
    for name, r in report["verdicts"].items():
        out.write(f"{r['status']:9s} {name}")
        if r["status"] == "mismatch":
            out.write(f"  expected {r['expected']} got {r['got']}")
        out.write("\n")
    s = report["summary"]
    out.write(f"{s['match']} match, {s['mismatch']} mismatch, {s['skipped']} skipped\n")


# ---------------------------------------------------------------------------
# argument parsing

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, help="soft seconds per check")
    p.add_argument("--timing", action="store_true", help="add wall-clock timings (not byte-stable)")


def _input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--vars", help="comma-separated variable names (default: identifiers in the input)")
    p.add_argument("--poly", help="polynomial; a top-level product is split into factors")
    p.add_argument("--factor", action="append", help="one factor of h (repeatable)")
    p.add_argument("--weights", help="a1,a2,... one rational weight per variable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcond", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dcond {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide conditions for h")
    _input(p)
    _common(p)
    p.add_argument("--conditions", default=",".join(CHECKS), help=f"subset of {','.join(CHECKS)}")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("bfun", help="bounded search for a functional equation")
    _input(p)
    _common(p)
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--max-coeff-deg", type=int, default=2)
    p.add_argument("--max-bdeg", type=int, default=3)
    p.set_defaults(run=cmd_bfun)

    p = sub.add_parser("arrangement", help="generic arrangement certificate and A(1/h)")
    _input(p)
    _common(p)
    p.set_defaults(run=cmd_arrangement)

    p = sub.add_parser("verify-ann", help="check operators annihilate (1/h~) h_d^s")
    _input(p)
    _common(p)
    p.add_argument("--distinguished", type=int, default=1, help="1-based index of the s-power factor")
    p.add_argument("--operator", action="append", help="operator to verify, e.g. 'x1*dx1 + s' (repeatable)")
    p.set_defaults(run=cmd_verify_ann)

    p = sub.add_parser("conormal", help="conormal ideal and linear type")
    _input(p)
    _common(p)
    p.set_defaults(run=cmd_conormal)

    p = sub.add_parser("corpus", help="run a fixture corpus")
    p.add_argument("path", help="fixture directory or file ('fixtures' for the bundled corpus)")
    _common(p)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(run=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 1
    try:
        report, code = args.run(args)
    except (UsageError, ParseError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        sys.stderr.write(f"dcond: error: {msg}\n")
        return 1
    except Exception as exc:  # pragma: no cover - reported, not raised
        sys.stderr.write(f"dcond: internal error: {type(exc).__name__}: {exc}\n")
        return 1
    if args.command == "corpus":
        emit_corpus(report, args.format)
    else:
        emit(report, args.format)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
