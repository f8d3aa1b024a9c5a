#!/usr/bin/env python3
"""Paired benchmark: iterative-alpha runs vs fixed controls at the reached alpha.

For every (c, repetition) cell this runs the iterative schedule, then a
fresh fixed-alpha run at the final alpha the schedule reached. The report
contains the per-pair feasibility contingency table and the cut-size
comparison over matched feasible pairs.

Example (smoke scale):
    python3 scripts/iterative_benchmark.py --sizes 6 14 --reps 3 --out results/paired
"""

import argparse
from pathlib import Path

from pce_mincut.harness import (
    ExperimentPlan,
    GraphSource,
    SolverSpec,
    emit_report,
    render_markdown,
    run_plan,
    write_history_csv,
    write_runs_csv,
)
from pce_mincut.optimize import OptimizerConfig


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="*", default=[6, 14])
    parser.add_argument("--c-values", type=int, nargs="*", default=None,
                        help="budget values (default: every c in [2, n/2])")
    parser.add_argument("--reps", type=int, default=10)
    parser.add_argument("--seed-base", type=int, default=0)
    parser.add_argument("--max-evals", type=int, default=3000)
    parser.add_argument("--workers", type=int, default=2)
    parser.add_argument("--out", type=str, default="results/iterative_benchmark")
    args = parser.parse_args()

    optimizer = OptimizerConfig(max_evals=args.max_evals) if args.max_evals else None
    failures = 0
    for n in args.sizes:
        out = Path(args.out) / f"n{n}"
        out.mkdir(parents=True, exist_ok=True)
        plan = ExperimentPlan(
            graph=GraphSource(kind="generate", n=n),
            c_values=tuple(args.c_values) if args.c_values else None,
            repetitions=args.reps,
            solvers=(
                SolverSpec(label="iterative", paired_control=True,
                           optimizer=optimizer),
            ),
            seed_base=args.seed_base,
            baseline_method="auto",
            baseline_cache=str(out / "baselines.json"),
            workers=args.workers,
        )
        print(f"== n={n}")
        records, report = run_plan(
            plan,
            records_path=out / "records.jsonl",
            progress=lambda r: print(".", end="", flush=True),
        )
        print()
        emit_report(report, "markdown", out)
        emit_report(report, "json", out)
        emit_report(report, "csv", out)
        write_runs_csv(records, out / "runs.csv")
        write_history_csv(records, out / "history.csv")
        print(render_markdown(report))
        failures += len(report.failures)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
