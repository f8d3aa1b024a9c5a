"""Gradient-free minimization of the loss over ansatz angles.

A single method is registered: Nelder-Mead with the standard coefficients
(reflection 1, expansion 2, contraction 0.5, shrink 0.5) and an axis-aligned
initial simplex. The registry exists so a gradient-based method can be
plugged in later without touching the solver.

Everything here is deterministic: identical (objective, x0, config) inputs
replay the exact same evaluation sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "OptimizerConfig",
    "OptimizeResult",
    "EvaluationError",
    "minimize",
    "random_init",
]


class EvaluationError(RuntimeError):
    """The objective returned NaN or infinity; .params holds the offending point."""

    def __init__(self, value: float, params: np.ndarray):
        self.value = value
        self.params = np.array(params)
        super().__init__(
            f"objective returned non-finite value {value!r} at parameters "
            f"{self.params.tolist()}"
        )


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "nelder_mead"
    max_evals: int | None = None  # None -> 400 * dimension
    x_tol: float = 1e-6
    f_tol: float = 1e-8
    initial_step: float = 0.5
    seed: int | None = None  # reserved for restart strategies
    record_trace: bool = False

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ValueError(
                f"unknown method {self.method!r}; registered: {sorted(_METHODS)}"
            )
        if self.x_tol <= 0 or self.f_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.initial_step <= 0:
            raise ValueError("initial_step must be positive")

    def budget(self, dim: int) -> int:
        b = 400 * dim if self.max_evals is None else self.max_evals
        if b < dim + 1:
            raise ValueError(f"max_evals={b} cannot even build a simplex in {dim}-D")
        return b


@dataclass
class OptimizeResult:
    best_params: np.ndarray
    best_value: float
    evals: int
    converged: bool
    trace: list[tuple[int, float]] | None = None


class _BudgetExhausted(Exception):
    pass


def minimize(objective, x0, cfg: OptimizerConfig | None = None) -> OptimizeResult:
    """Minimize a total real function of a real vector from the start point x0."""
    if cfg is None:
        cfg = OptimizerConfig()
    x0 = np.asarray(x0, dtype=float)
    if x0.ndim != 1 or x0.size < 1:
        raise ValueError("x0 must be a non-empty 1-D vector")
    return _METHODS[cfg.method](objective, x0, cfg)


def random_init(dim: int, seed: int | None, low: float = -math.pi, high: float = math.pi) -> np.ndarray:
    """Uniform i.i.d. start vector; reproducible per seed."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    return np.random.default_rng(seed).uniform(low, high, size=dim)


def _nelder_mead(objective, x0: np.ndarray, cfg: OptimizerConfig) -> OptimizeResult:
    dim = x0.size
    max_evals = cfg.budget(dim)
    trace: list[tuple[int, float]] | None = [] if cfg.record_trace else None

    evals = 0
    best_x = x0.copy()
    best_f = math.inf

    def f(x: np.ndarray) -> float:
        nonlocal evals, best_x, best_f
        if evals >= max_evals:
            raise _BudgetExhausted
        value = float(objective(x))
        evals += 1
        if not math.isfinite(value):
            raise EvaluationError(value, x)
        if trace is not None:
            trace.append((evals, value))
        if value < best_f:
            best_f = value
            best_x = np.array(x)
        return value

    converged = False
    try:
        simplex = [x0.copy()]
        for i in range(dim):
            v = x0.copy()
            v[i] += cfg.initial_step
            simplex.append(v)
        fvals = [f(v) for v in simplex]

        while True:
            order = sorted(range(dim + 1), key=lambda i: fvals[i])
            simplex = [simplex[i] for i in order]
            fvals = [fvals[i] for i in order]

            spread_f = fvals[-1] - fvals[0]
            spread_x = max(np.max(np.abs(v - simplex[0])) for v in simplex[1:])
            if spread_f <= cfg.f_tol and spread_x <= cfg.x_tol:
                converged = True
                break

            centroid = np.mean(simplex[:-1], axis=0)
            worst = simplex[-1]
            reflected = centroid + (centroid - worst)
            fr = f(reflected)

            if fvals[0] <= fr < fvals[-2]:
                simplex[-1], fvals[-1] = reflected, fr
                continue
            if fr < fvals[0]:
                expanded = centroid + 2.0 * (centroid - worst)
                fe = f(expanded)
                if fe < fr:
                    simplex[-1], fvals[-1] = expanded, fe
                else:
                    simplex[-1], fvals[-1] = reflected, fr
                continue
            # fr >= second worst: contract toward the better of worst/reflected
            if fr < fvals[-1]:
                contracted = centroid + 0.5 * (centroid - worst)
                fc = f(contracted)
                if fc <= fr:
                    simplex[-1], fvals[-1] = contracted, fc
                    continue
            else:
                contracted = centroid - 0.5 * (centroid - worst)
                fc = f(contracted)
                if fc < fvals[-1]:
                    simplex[-1], fvals[-1] = contracted, fc
                    continue
            # shrink everything toward the best vertex
            for i in range(1, dim + 1):
                simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                fvals[i] = f(simplex[i])
    except _BudgetExhausted:
        converged = False

    return OptimizeResult(
        best_params=best_x,
        best_value=best_f,
        evals=evals,
        converged=converged,
        trace=trace,
    )


_METHODS = {"nelder_mead": _nelder_mead}
