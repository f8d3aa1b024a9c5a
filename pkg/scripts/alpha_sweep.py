#!/usr/bin/env python3
"""Sweep the sharpness parameter on fixed-alpha runs.

Reproduces the constraint-success / binarization / cut-size curves as a
function of alpha. Emits a JSON-lines record file, tidy runs.csv, and the
markdown summary table.

Example (smoke scale):
    python3 scripts/alpha_sweep.py --n 6 --reps 3 --out results/alpha6
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
    write_runs_csv,
)
from pce_mincut.optimize import OptimizerConfig


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--alphas", type=float, nargs="*",
                        default=[4, 8, 16, 32, 64, 100, 300, 1000])
    parser.add_argument("--beta", type=float, default=1000.0,
                        help="fixed penalty strength (omit the flag value to use the degree heuristic)")
    parser.add_argument("--reps", type=int, default=10)
    parser.add_argument("--seed-base", type=int, default=0)
    parser.add_argument("--max-evals", type=int, default=None)
    parser.add_argument("--workers", type=int, default=2)
    parser.add_argument("--out", type=str, default="results/alpha_sweep")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    optimizer = OptimizerConfig(max_evals=args.max_evals) if args.max_evals else None
    plan = ExperimentPlan(
        graph=GraphSource(kind="generate", n=args.n),
        repetitions=args.reps,
        solvers=tuple(
            SolverSpec(label=f"fixed-a{a:g}", mode="fixed", alpha=a,
                       beta=args.beta, optimizer=optimizer)
            for a in args.alphas
        ),
        seed_base=args.seed_base,
        baseline_method="auto",
        baseline_cache=str(out / "baselines.json"),
        record_history=False,
        workers=args.workers,
    )
    records, report = run_plan(
        plan,
        records_path=out / "records.jsonl",
        progress=lambda r: print(".", end="", flush=True),
    )
    print()
    emit_report(report, "markdown", out)
    emit_report(report, "json", out)
    write_runs_csv(records, out / "runs.csv")
    print(render_markdown(report))
    print(f"records and tables in {out}/")
    return 1 if report.failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
