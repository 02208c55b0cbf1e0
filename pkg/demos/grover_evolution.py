"""Entanglement along a Grover search, half-step by half-step.

Reproduces the three- and five-qubit evolution tables next to the published
numbers.  Rows whose delta exceeds the column tolerance are marked with '!'.
The numeric column is the true geometric measure; the closed-form column is
what the reference tables were computed from.
"""

from groverian.report import build_trace_report


def show(n):
    report = build_trace_report(n, compare=True)
    print(f"\nn = {n}, marked = {report.marked}, iterations = {report.iterations}")
    print(f"{'step':<20}{'G closed':>10}{'published':>11}{'G exact':>10}{'entropy':>10}{'P(w)':>9}")
    for r in report.rows:
        mark = "!" if r.published.get("flag_groverian") else " "
        print(
            f"{r.step_label:<20}{r.groverian_cf:>10.4f}{r.published['published_groverian']:>10.2f}{mark}"
            f"{r.groverian_numeric:>10.4f}{r.entropy:>10.4f}{r.success_prob:>9.4f}"
        )
    for note in report.notes:
        print("  note:", note)


def main():
    show(3)
    show(5)


if __name__ == "__main__":
    main()
