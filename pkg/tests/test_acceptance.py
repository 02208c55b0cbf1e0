"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test records a PASS/FAIL line (shown in the "acceptance criteria" section
of the terminal summary) before asserting, so a failing criterion still
reports what was measured.
"""

import json
import time
from pathlib import Path

import numpy as np

import conftest
from groverian import (
    analytic_bloch,
    analytic_state,
    averaged_operational_success,
    closed_form_pmax,
    entropy_measure,
    make_named,
    numeric_pmax,
    render_groups,
    run_trace,
    success_probability,
)
from groverian.aux_measures import entropy_of_rdm, three_tangle
from groverian.baselines import REFERENCE_TABLES
from groverian.cli import main
from groverian.report import build_trace_report
from oracles import pairwise_three_tangle

GOLDEN = Path(__file__).parent / "golden"


def record(number, passed, detail):
    conftest.ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
    return passed


def fmt(values):
    return "(" + ", ".join(f"{v:.4g}" for v in values) + ")"


def test_criterion_1_three_qubit_groverian():
    t0 = time.perf_counter()
    g = [closed_form_pmax(s).g for _, s in run_trace(3, 7, 2).steps]
    elapsed = time.perf_counter() - t0
    ref = REFERENCE_TABLES[3]["groverian"]
    worst = max(abs(a - b) for a, b in zip(g, ref))
    ok = worst <= 0.005 and elapsed < 1.0
    record(1, ok, f"G = {fmt(g)}, max |delta| = {worst:.4f} (tol 0.005), {elapsed:.3f} s (limit 1 s)")
    assert ok


def test_criterion_2_three_qubit_tangle():
    states = [s for _, s in run_trace(3, 7, 2).steps]
    tau = [three_tangle(s) for s in states]
    ref = REFERENCE_TABLES[3]["tangle"]
    head = max(abs(a - b) for a, b in zip(tau[:4], ref[:4]))
    oracle = pairwise_three_tangle(states[4].amplitudes.real)
    report = build_trace_report(3, compare=True)
    flagged = report.flagged_rows("tangle") == [4]
    ok = head <= 0.0005 and abs(tau[4] - oracle) < 1e-9 and flagged
    record(
        2,
        ok,
        f"rows 1-4 max |delta| = {head:.2g} (tol 0.0005); row 5 = {tau[4]:.6f}, "
        f"concurrence oracle = {oracle:.6f}, published {ref[4]} flagged = {flagged}",
    )
    assert ok


def test_criterion_3_five_qubit_groverian():
    t0 = time.perf_counter()
    report = build_trace_report(5, compare=True)
    elapsed = time.perf_counter() - t0
    g = report.column("groverian_cf")
    off = report.flagged_rows("groverian")
    with_oracle = all(np.isfinite(report.rows[i].groverian_numeric) for i in off)
    ok = with_oracle and elapsed < 5.0
    detail = ", ".join(
        f"row {i + 1}: cf {g[i]:.4f} vs {report.rows[i].published['published_groverian']} "
        f"(oracle G {report.rows[i].groverian_numeric:.4f})"
        for i in off
    )
    record(
        3,
        ok,
        f"G = {fmt(g)}; {len(off)} row(s) outside 0.01, each reported with its oracle value "
        f"[{detail}]; {elapsed:.2f} s (limit 5 s)",
    )
    assert ok


def test_criterion_4_golden_groups():
    three_exact = render_groups(3) == (GOLDEN / "groups_n3.txt").read_text()
    printed = (GOLDEN / "groups_n5_head.txt").read_text().splitlines()
    rendered = render_groups(5).splitlines()
    tokens_match = all(a.split() == b.split() for a, b in zip(rendered, printed))
    ok = three_exact and tokens_match and len(printed) == 5
    record(
        4,
        ok,
        f"n=3 exact = {three_exact}; n=5 token match on the {len(printed)} radicals printed in the source "
        f"(the printed five-qubit expression stops after 5) = {tokens_match}",
    )
    assert ok


def test_criterion_5_entropy():
    uniform = {n: entropy_measure(make_named("uniform", n)) for n in (3, 5)}
    final = entropy_measure(run_trace(5, 31, 4).steps[-1][1])
    route = 0.0
    for n in (3, 5):
        for k in range(3 if n == 3 else 5):
            via_bloch = entropy_of_rdm(analytic_bloch(n, k).to_rdm())
            via_trace = entropy_measure(analytic_state(n, 2**n - 1, k))
            route = max(route, abs(via_bloch - via_trace))
    parts = {
        "uniform exactly 0": all(v == 0.0 for v in uniform.values()),
        "final n=5 row within 1e-3 of 0": final <= 1e-3,
        "bloch vs partial trace within 1e-12": route < 1e-12,
    }
    ok = all(parts.values())
    record(
        5,
        ok,
        f"uniform n=3,5 = {uniform[3]}, {uniform[5]}; final n=5 row = {final:.6f} bits "
        f"(pure-state partial trace of the 4-iteration state, not 0); route max |delta| = {route:.1e}; "
        + ", ".join(f"{k}: {v}" for k, v in parts.items()),
    )
    assert ok


def test_criterion_6_grover_correctness():
    theta3 = np.arcsin(1 / np.sqrt(8))
    theta5 = np.arcsin(1 / np.sqrt(32))
    p3 = success_probability(run_trace(3, 7, 2).steps[-1][1], 7)
    p5 = success_probability(run_trace(5, 31, 4).steps[-1][1], 31)
    worst = 0.0
    for n, m in ((3, 2), (5, 4)):
        tr = run_trace(n, 2**n - 1, m)
        for k in range(m + 1):
            a, b = tr.full_iteration(k).amplitudes, analytic_state(n, 2**n - 1, k).amplitudes
            worst = max(worst, min(np.abs(a - b).max(), np.abs(a + b).max()))
    ok = abs(p3 - np.sin(5 * theta3) ** 2) < 1e-9 and abs(p5 - np.sin(9 * theta5) ** 2) < 1e-9 and worst < 1e-12
    record(
        6,
        ok,
        f"n=3: {p3:.10f} vs sin^2(5 theta0) = {np.sin(5 * theta3) ** 2:.10f}; "
        f"n=5: {p5:.10f} vs sin^2(9 theta0) = {np.sin(9 * theta5) ** 2:.10f} "
        f"(the quoted 0.99933 is off by {abs(p5 - 0.99933):.1e}); trace vs analytic {worst:.1e}",
    )
    assert ok


def test_criterion_7_property_suite(capsys):
    t0 = time.perf_counter()
    code = main(["verify", "--samples", "1000", "--seed", "7"])
    elapsed = time.perf_counter() - t0
    summary = json.loads(capsys.readouterr().out)
    names = {c["name"] for c in summary["checks"]}
    failing = [c["name"] for c in summary["checks"] if not c["passed"]]
    required = {
        "upper_bound_dominance_n3",
        "upper_bound_dominance_n5",
        "product_state_exactness",
        "relabeling_invariance",
        "alternating_monotonicity",
        "numeric_named_states",
    }
    ok = code == 0 and required <= names and not failing and elapsed < 60
    record(7, ok, f"exit {code}, {len(names)} checks, failing = {failing or 'none'}, {elapsed:.1f} s (limit 60 s)")
    assert ok


def test_criterion_8_operational_bridge():
    gaps = []
    for _, s in run_trace(3, 7, 2).steps:
        res = numeric_pmax(s)
        avg = averaged_operational_success(s, 2, res.maximizer)
        gaps.append(abs(avg - res.p_max))
    ok = max(gaps) <= 0.35
    record(8, ok, f"|avg success - numeric P_max| per trace state = {fmt(gaps)} (loose bound 0.35)")
    assert ok
