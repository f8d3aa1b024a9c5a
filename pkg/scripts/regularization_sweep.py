#!/usr/bin/env python3
"""Effect of the regularization strength on constraint satisfaction.

Sweeps eta on fixed-alpha runs; stronger regularization pulls soft values
toward zero, which lowers binarization and, with it, the constraint success
ratio.

Example:
    python3 scripts/regularization_sweep.py --n 6 --reps 5 --out results/reg
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
    parser.add_argument("--alpha", type=float, default=100.0)
    parser.add_argument("--etas", type=float, nargs="*",
                        default=[0.0, 1.0, 10.0, 100.0, 1000.0])
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--seed-base", type=int, default=0)
    parser.add_argument("--max-evals", type=int, default=None)
    parser.add_argument("--workers", type=int, default=2)
    parser.add_argument("--out", type=str, default="results/regularization")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    optimizer = OptimizerConfig(max_evals=args.max_evals) if args.max_evals else None
    plan = ExperimentPlan(
        graph=GraphSource(kind="generate", n=args.n),
        repetitions=args.reps,
        solvers=tuple(
            SolverSpec(label=f"eta{eta:g}", mode="fixed", alpha=args.alpha,
                       eta=eta, optimizer=optimizer)
            for eta in args.etas
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
    write_runs_csv(records, out / "runs.csv")
    print(render_markdown(report))
    return 1 if report.failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
