"""Command-line front end.

Exit codes: 0 pass, 1 mathematical failure (verdict false or oracle
disagreement), 2 input or usage error.
"""

import argparse
from datetime import datetime, timezone
import math
import os
import sys

import numpy as np

from . import __version__
from .algebra import DEFAULT_TOL, selftest_identities
from .errors import DomainError, StepSizeError
from .ito import ccr_residual_parts, oracle_equivalence
from .model import PhysicalParams, master_mean_oracle, realize, simulate_mean
from .pauli import pauli_outer_relations_check
from .realizability import (check_ccr_preservation, check_physical_realizability,
                            extract_parameters, theorem3_harness)
from .serialization import (SystemFileError, digest, dumps, load_system, params_to_dict,
                            qsde_to_dict, write_trajectory_csv)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
IDENTITY_TOL = 1e-11
SIM_TOL = 1e-6


class UsageError(Exception):
    pass


def _color(text, code):
    if os.environ.get("NO_COLOR") or not sys.stderr.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _status(ok):
    return _color("PASS", "32") if ok else _color("FAIL", "31")


def _note(msg):
    print(msg, file=sys.stderr)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(args, raw, **body):
    doc = {
        "command": args.command,
        "input_sha256": digest(raw) if raw is not None else None,
        "tolerance": getattr(args, "tol", None),
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    doc.update(body)
    return doc


def _load_qsde(path):
    system, raw = load_system(path)
    if isinstance(system, PhysicalParams):
        return realize(system), system, raw
    return system, None, raw


def _positive_trials(n):
    if n < 1:
        raise UsageError(f"--trials must be >= 1, got {n}")
    return n


def cmd_check(args):
    qsde, _, raw = _load_qsde(args.path)
    pr = check_physical_realizability(qsde, args.tol)
    ccr = check_ccr_preservation(qsde, args.tol)
    doc = _report(
        args, raw,
        verdicts={"physically_realizable": pr.verdict, "ccr_preserved": ccr.verdict},
        residuals={**pr.residuals, **ccr.residuals},
        failing=pr.failing + ccr.failing,
        extracted=params_to_dict(pr.extracted)["params"] if pr.extracted else None,
    )
    _emit(dumps(doc), args.out)
    for name, v in doc["residuals"].items():
        _note(f"{_status(v <= args.tol)} {name:14s} {v:.3e}")
    return EXIT_OK if pr.verdict and ccr.verdict else EXIT_FAIL


def cmd_extract(args):
    qsde, _, _ = _load_qsde(args.path)
    pr = check_physical_realizability(qsde, args.tol)
    if not pr.verdict:
        _note("extraction refused: system is not physically realizable; "
              f"failing conditions: {', '.join(pr.failing)}")
        return EXIT_FAIL
    _emit(dumps(params_to_dict(extract_parameters(qsde), args.digits)), args.out)
    return EXIT_OK


def cmd_realize(args):
    system, _ = load_system(args.path)
    if not isinstance(system, PhysicalParams):
        raise SystemFileError("realize expects a file with 'params'")
    _emit(dumps(qsde_to_dict(realize(system))), args.out)
    return EXIT_OK


def cmd_oracle(args):
    if not args.path and not args.random:
        raise UsageError("oracle needs a system file or --random")
    body, ok = {}, True
    raw = None
    if args.path:
        qsde, _, raw = _load_qsde(args.path)
        parts = ccr_residual_parts(qsde)
        residual = max(parts.values())
        checker = check_ccr_preservation(qsde, args.tol)
        realizable = check_physical_realizability(qsde, args.tol).verdict
        agree = (residual <= args.tol) == checker.verdict
        body["system"] = {
            "oracle_residual": residual, "oracle_parts": parts,
            "checker_verdict": checker.verdict, "checker_residuals": checker.residuals,
            "realizable": realizable, "agree": agree,
        }
        if not agree:
            _note("oracle and matrix checker DISAGREE: this indicates an implementation bug")
        if realizable and residual > args.tol:
            _note("realizable system has nonzero oracle residual: implementation bug")
        ok = agree and (not realizable or residual <= args.tol)
    eq = oracle_equivalence(args.seed, _positive_trials(args.trials), args.tol)
    body["equivalence"] = {
        "seed": args.seed, "trials": eq.trials,
        "realizable_checked": eq.realizable_checked,
        "arbitrary_checked": eq.arbitrary_checked,
        "disagreements": [list(map(_jsonable, d)) for d in eq.disagreements],
        "realizable_failures": [list(map(_jsonable, d)) for d in eq.realizable_failures],
    }
    if not eq.ok:
        _note("random-system equivalence failed: implementation bug")
    ok = ok and eq.ok
    body["verdict"] = ok
    _emit(dumps(_report(args, raw, **body)), args.out)
    _note(f"{_status(ok)} oracle")
    return EXIT_OK if ok else EXIT_FAIL


def _jsonable(v):
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    return v


def _parse_r0(text):
    try:
        r0 = [float(s) for s in text.split(",")]
    except ValueError:
        raise UsageError(f"--r0 must be three comma-separated numbers, got {text!r}")
    if len(r0) != 3 or not all(math.isfinite(v) for v in r0):
        raise UsageError(f"--r0 must be three finite numbers, got {text!r}")
    if np.linalg.norm(r0) > 1 + 1e-9:
        raise UsageError(f"--r0 must lie in the unit ball, |r0| = {np.linalg.norm(r0):.6g}")
    return r0


def cmd_simulate(args):
    r0 = _parse_r0(args.r0)
    qsde, params, _ = _load_qsde(args.path)
    states = simulate_mean(qsde, r0, args.T, args.dt)
    oracle = None
    if args.oracle:
        if params is None:
            pr = check_physical_realizability(qsde, args.tol)
            if not pr.verdict:
                raise UsageError("--oracle needs a physically realizable system")
            params = pr.extracted
        oracle = master_mean_oracle(params, r0, args.T, args.dt)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_trajectory_csv(fh, states, oracle)
    else:
        write_trajectory_csv(sys.stdout, states, oracle)
    if oracle is not None:
        dev = max(float(np.max(np.abs(s.r - m.r))) for s, m in zip(states, oracle))
        _note(f"{_status(dev <= SIM_TOL)} max deviation from master equation {dev:.3e}")
        return EXIT_OK if dev <= SIM_TOL else EXIT_FAIL
    return EXIT_OK


def cmd_selftest(args):
    trials = _positive_trials(args.trials)
    checks = []
    ids = selftest_identities(args.seed, trials)
    checks += [(f"identity: {k}", v <= IDENTITY_TOL, v) for k, v in ids.items()]
    outer = float(pauli_outer_relations_check())
    checks.append(("pauli: x x^T and [x, x^T] relations", outer == 0, outer))
    h = theorem3_harness(args.seed, trials, args.tol)
    checks.append(("realizable systems preserve commutation", h.ok, h.trials - h.passed))
    eq = oracle_equivalence(args.seed, trials, args.tol)
    checks.append(("oracle equivalence", eq.ok,
                   len(eq.disagreements) + len(eq.realizable_failures)))
    doc = _report(args, None, seed=args.seed, trials=trials,
                  checks=[{"name": n, "pass": bool(ok), "value": _jsonable(v)}
                          for n, ok, v in checks])
    _emit(dumps(doc), args.out)
    for name, ok, v in checks:
        _note(f"{_status(ok)} {name}")
    failed = [n for n, ok, _ in checks if not ok]
    if failed:
        _note(f"first failing check: {failed[0]}")
        return EXIT_FAIL
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="spinqsde",
        description="Realizability and commutation checks for open qubit QSDEs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, path=True, tol=True):
        if path:
            sp.add_argument("path", help="system file (JSON)")
        if tol:
            sp.add_argument("--tol", type=float, default=DEFAULT_TOL,
                            help="absolute residual tolerance (default %(default)g)")
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("check", help="run the realizability and CCR checks")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("extract", help="recover alpha and lambda from a realizable QSDE")
    common(sp)
    sp.add_argument("--digits", type=int, default=12,
                    help="round extracted values to this many decimals (default 12)")
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("realize", help="build the QSDE generated by params")
    common(sp, tol=False)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("oracle", help="Ito-calculus check of commutation preservation")
    sp.add_argument("path", nargs="?", help="system file (JSON)")
    sp.add_argument("--random", action="store_true", help="only run random trials")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, path=False)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("simulate", help="vacuum mean Bloch-vector trajectory as CSV")
    common(sp)
    sp.add_argument("--r0", default="0,0,1", help="initial Bloch vector x,y,z")
    sp.add_argument("--T", type=float, default=1.0, help="horizon")
    sp.add_argument("--dt", type=float, default=1e-3, help="RK4 step")
    sp.add_argument("--oracle", action="store_true",
                    help="append master-equation columns and deviation")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("selftest", help="identity suite, realizability harness, oracle")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=100)
    common(sp, path=False)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SystemFileError, UsageError, StepSizeError, DomainError) as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
