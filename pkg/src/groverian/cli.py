"""Command-line interface: ``groverian {measure,evolve,groups,verify}``.

Exit codes: 0 success, 1 property failure, 2 I/O or parse error, 3 invalid
configuration.  ``GROVERIAN_SEED`` overrides the default seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from .aux_measures import entropy_measure, three_tangle
from .errors import ConfigurationError, DomainError, StateFileError, UnsupportedSizeError
from .measure import DEFAULT_SEED, DEFAULT_STARTS, NumericConfig, closed_form_pmax, grid_pmax, numeric_pmax, render_groups
from .report import build_trace_report, to_csv, to_json
from .state import MAX_QUBITS
from .statefile import load_state
from .verify import run_verification

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_IO = 2
EXIT_CONFIG = 3

BOUND_GAP_WARN = 1e-6


class _Parser(argparse.ArgumentParser):
    # usage errors count as invalid configuration
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("GROVERIAN_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"GROVERIAN_SEED must be an integer, got {raw!r}") from None


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _numeric_cfg(args) -> NumericConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return NumericConfig(starts=args.starts, seed=seed)


def _result_dict(res) -> dict:
    out = {"p_max": res.p_max, "g": res.g}
    if res.maximizer is not None:
        out["maximizer"] = {"thetas": list(res.maximizer.thetas), "phis": list(res.maximizer.phis)}
    return out


def cmd_measure(args) -> int:
    try:
        state = load_state(args.state_file)
    except (StateFileError, DomainError, UnsupportedSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    cfg = _numeric_cfg(args)
    wanted = ["closed_form", "numeric", "grid"] if args.method == "all" else [
        {"closed": "closed_form", "numeric": "numeric", "grid": "grid"}[args.method]
    ]
    if args.qubit is not None and not 1 <= args.qubit <= state.n:
        raise ConfigurationError(f"--qubit {args.qubit} out of range 1..{state.n}")

    methods: dict = {}
    numeric = None
    for name in wanted:
        if name in ("closed_form", "grid") and not state.is_real:
            if args.method != "all":
                raise ConfigurationError(f"{name} method requires real amplitudes")
            _warn(f"{name} skipped: state has complex amplitudes")
            methods[name] = None
            continue
        if name == "grid" and state.n > 3:
            if args.method != "all":
                raise ConfigurationError(f"grid method supports n <= 3, got n={state.n}")
            _warn(f"grid skipped: n={state.n} exceeds the grid oracle's range")
            methods[name] = None
            continue
        if name == "closed_form":
            res = closed_form_pmax(state)
        elif name == "numeric":
            res = numeric = numeric_pmax(state, cfg)
        else:
            res = grid_pmax(state)
        methods[name] = _result_dict(res)

    if methods.get("closed_form") is not None:
        check = numeric or numeric_pmax(state, cfg)
        gap = methods["closed_form"]["p_max"] - check.p_max
        if gap > BOUND_GAP_WARN:
            _warn(f"closed-form P_max exceeds the numeric maximum by {gap:.6g}; the closed form is an upper bound here")

    qubits = [args.qubit] if args.qubit is not None else list(range(1, state.n + 1))
    entropy = {str(l): entropy_measure(state, l) for l in qubits}
    tangle = three_tangle(state) if state.n == 3 and state.is_real else None

    if args.format == "json":
        out = {"n": state.n, "methods": methods, "entropy": entropy, "tangle": tangle}
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "method", "qubit", "value"])
        for name, res in methods.items():
            if res is None:
                continue
            w.writerow(["p_max", name, "", f"{res['p_max']:.6g}"])
            w.writerow(["g", name, "", f"{res['g']:.6g}"])
        for l, v in entropy.items():
            w.writerow(["entropy", "", l, f"{v:.6g}"])
        if tangle is not None:
            w.writerow(["tangle", "", "", f"{tangle:.6g}"])
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_evolve(args) -> int:
    if not 1 <= args.n <= MAX_QUBITS:
        raise ConfigurationError(f"--n must be in 1..{MAX_QUBITS}, got {args.n}")
    if args.iterations is not None and args.iterations < 0:
        raise ConfigurationError("--iterations must be >= 0")
    marked = args.marked if args.marked is not None else 2**args.n - 1
    if not 0 <= marked < 2**args.n:
        raise ConfigurationError(f"--marked {marked} out of range for n={args.n}")
    report = build_trace_report(args.n, marked, args.iterations, _numeric_cfg(args), compare=args.paper_compare)
    if args.format == "json":
        sys.stdout.write(to_json(report))
    else:
        sys.stdout.write(to_csv(report))
        for note in report.notes:
            print(f"note: {note}", file=sys.stderr)
    return EXIT_OK


def cmd_groups(args) -> int:
    sys.stdout.write(render_groups(args.n))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise ConfigurationError("--samples must be >= 1")
    cfg = NumericConfig(starts=args.starts)
    summary = run_verification(args.samples, args.seed if args.seed is not None else _default_seed(), cfg)
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK if summary["passed"] else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="groverian", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def solver_flags(p):
        p.add_argument("--seed", type=int, default=None, help="RNG seed for numeric starts")
        p.add_argument("--starts", type=int, default=DEFAULT_STARTS, help="number of random starts")

    p = sub.add_parser("measure", help="entanglement measures of one state file")
    p.add_argument("state_file")
    p.add_argument("--method", choices=["closed", "numeric", "grid", "all"], default="all")
    p.add_argument("--qubit", type=int, default=None, help="report entropy for this qubit only (1-based)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    solver_flags(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("evolve", help="measures along a Grover search trace")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marked", type=int, default=None, help="marked basis index (default all-ones)")
    p.add_argument("--iterations", type=int, default=None, help="full iterations (default optimal)")
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--paper-compare", action="store_true", help="attach reference table values and deltas")
    solver_flags(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("groups", help="print the sign-group expression for n qubits")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_groups)

    p = sub.add_parser("verify", help="run the randomized property suite")
    p.add_argument("--samples", type=int, default=1000)
    solver_flags(p)
    p.set_defaults(func=cmd_verify, seed=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, UnsupportedSizeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
