"""Solver workflows: fixed-sharpness runs and the iterative-alpha schedule.

A fixed run draws random ansatz angles, minimizes the loss at one alpha, and
decodes the signs of the expectation values into a cut assignment.

The iterative schedule starts at a small alpha and repeats: minimize at the
current alpha (warm-started from the previous angles), then raise alpha just
enough to push the not-yet-binarized soft value closest to the threshold M
over it. Two update rules are available:

    arctanh_ratio   alpha *= arctanh(M) / arctanh(|t*|)
    large_scale     alpha *= arctanh(M) / |t*|

where t* is the in-progress soft value nearest M. The first rule's
multiplier approaches 1 when t* hugs M, which can stall on large instances;
the second always applies at least the factor arctanh(M)/M > 1. The loop
ends when every soft value clears M, when the outer-iteration cap is hit,
or one inner run after the proposed alpha overflows the alpha cap (at the
cap tanh is bitwise saturated and further updates are inert).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .encoding import enumerate_strings
from .graph import cut_size
from .objective import ObjectiveSpec, binarization, decode, is_feasible, loss, soft_values
from .optimize import OptimizerConfig, minimize, random_init
from .quantum import ExpectationKernel, parameter_count, prepare_state

__all__ = [
    "PceConfig",
    "SolveOutcome",
    "IterationRecord",
    "solve_pce",
    "solve_iterative",
    "solve",
    "next_alpha",
    "control_config",
    "solve_pce_at_final_alpha",
    "default_config",
    "CONTROL_SEED_OFFSET",
    "ANSATZ_LAYOUT",
]

# seed shift for the paired fixed-alpha control run, kept fixed so paired
# experiments are replayable from the iterative run's seed alone
CONTROL_SEED_OFFSET = 104729

# recorded in every run record so results are self-describing
ANSATZ_LAYOUT = "brickwork(ry+rz columns, cz bricks, qubit0=msb)"

# an alpha multiplier this close to 1 makes no practical progress
STALL_FACTOR = 1.0 + 1e-6


@dataclass(frozen=True)
class PceConfig:
    objective: ObjectiveSpec
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    seed: int = 0
    alpha_mode: str = "fixed"  # "fixed" | "iterative"
    M: float = 0.90
    alpha0: float = 3.0
    update_rule: str = "arctanh_ratio"  # | "large_scale"
    max_outer_iters: int = 50
    alpha_cap: float = 1e16
    layers: int = 1

    def __post_init__(self) -> None:
        if self.alpha_mode not in ("fixed", "iterative"):
            raise ValueError(f"unknown alpha_mode {self.alpha_mode!r}")
        if self.update_rule not in ("arctanh_ratio", "large_scale"):
            raise ValueError(f"unknown update_rule {self.update_rule!r}")
        if not (0.0 < self.M < 1.0):
            raise ValueError(f"threshold M must be in (0, 1), got {self.M}")
        if self.alpha0 <= 0:
            raise ValueError("alpha0 must be positive")
        if self.max_outer_iters < 1:
            raise ValueError("max_outer_iters must be at least 1")
        if self.layers < 1:
            raise ValueError("layers must be at least 1")


@dataclass
class IterationRecord:
    outer_iter: int
    alpha: float
    loss: float
    binarization: float
    minus_count: int
    evals: int
    stalled: bool


@dataclass
class SolveOutcome:
    z: np.ndarray
    soft: np.ndarray
    feasible: bool
    cut: float
    final_alpha: float
    outer_iters: int
    inner_evals: int
    theta_final: np.ndarray
    loss_final: float
    capped: bool = False
    history: list[IterationRecord] | None = None


def default_config(
    graph,
    c: int,
    *,
    alpha_mode: str = "iterative",
    seed: int = 0,
    alpha: float | None = None,
    beta: float | None = None,
    eta: float = 0.0,
    family: str = "full_xyz",
    pauli: str = "Z",
    k: int | None = None,
    layers: int = 1,
    optimizer: OptimizerConfig | None = None,
    M: float | None = None,
    alpha0: float | None = None,
    update_rule: str | None = None,
    max_outer_iters: int = 50,
    alpha_cap: float = 1e16,
) -> PceConfig:
    """PceConfig with size-dependent defaults.

    Order k is 2 up to 25 nodes, 3 up to 50, 4 above; the register is the
    smallest that fits n variables. Instances of 150+ nodes get a tighter
    binarization threshold (0.95) and a gentler starting alpha (1), and
    sizes above 25 switch to the large_scale update rule.
    """
    from .encoding import EncodingSpec, minimal_qubits

    n = graph.n
    if k is None:
        k = 2 if n <= 25 else (3 if n <= 50 else 4)
    if family == "single_pauli_mixed":
        spec_k = (1, k)
        enc = EncodingSpec(family, m=minimal_qubits(family, spec_k, n), n_vars=n,
                           k_range=spec_k, pauli=pauli)
    else:
        enc = EncodingSpec(family, m=minimal_qubits(family, k, n), n_vars=n,
                           k=k, pauli=pauli)
    if M is None:
        M = 0.95 if n >= 150 else 0.90
    if alpha0 is None:
        alpha0 = 1.0 if n >= 150 else 3.0
    if update_rule is None:
        update_rule = "arctanh_ratio" if n <= 25 else "large_scale"
    if alpha is None:
        alpha = alpha0
    objective = ObjectiveSpec(graph=graph, encoding=enc, alpha=alpha, c=c,
                              beta=beta, eta=eta)
    return PceConfig(
        objective=objective,
        optimizer=optimizer if optimizer is not None else OptimizerConfig(),
        seed=seed,
        alpha_mode=alpha_mode,
        M=M,
        alpha0=alpha0,
        update_rule=update_rule,
        max_outer_iters=max_outer_iters,
        alpha_cap=alpha_cap,
        layers=layers,
    )


class _Runtime:
    """Shared per-solve machinery: string kernel and loss closure."""

    def __init__(self, cfg: PceConfig):
        self.cfg = cfg
        enc = cfg.objective.encoding
        self.m = enc.m
        self.dim = parameter_count(self.m, cfg.layers)
        self.kernel = ExpectationKernel(enumerate_strings(enc), enc.m)

    def expectations(self, theta: np.ndarray) -> np.ndarray:
        return self.kernel(prepare_state(self.m, theta, self.cfg.layers))

    def loss_fn(self, spec: ObjectiveSpec):
        def f(theta):
            return loss(spec, self.expectations(theta))

        return f


def _finish(rt: _Runtime, spec: ObjectiveSpec, theta: np.ndarray, alpha: float,
            total_evals: int, outer_iters: int, capped: bool,
            history: list[IterationRecord] | None) -> SolveOutcome:
    e = rt.expectations(theta)
    soft = soft_values(np.clip(e, -1.0, 1.0), alpha)
    z = decode(e)
    return SolveOutcome(
        z=z,
        soft=soft,
        feasible=is_feasible(z, spec.c),
        cut=cut_size(spec.graph, z),
        final_alpha=float(alpha),
        outer_iters=outer_iters,
        inner_evals=total_evals,
        theta_final=theta,
        loss_final=loss(replace(spec, alpha=alpha), e),
        capped=capped,
        history=history,
    )


def solve_pce(cfg: PceConfig) -> SolveOutcome:
    """One fixed-alpha run: random angles, minimize, decode."""
    if cfg.alpha_mode != "fixed":
        raise ValueError("solve_pce expects alpha_mode='fixed'")
    rt = _Runtime(cfg)
    theta0 = random_init(rt.dim, cfg.seed)
    spec = cfg.objective
    result = minimize(rt.loss_fn(spec), theta0, cfg.optimizer)
    return _finish(rt, spec, result.best_params, spec.alpha,
                   result.evals, outer_iters=1, capped=False, history=None)


def next_alpha(soft, alpha: float, M: float, rule: str = "arctanh_ratio") -> float:
    """Next sharpness value; returns alpha unchanged when all values clear M.

    Picks the under-threshold soft value closest to M and scales alpha so
    that value would land exactly on M if its expectation stayed put. Soft
    values are clamped below 1 before arctanh; a zero-valued pick yields
    +inf, which the solve loop turns into cap-triggered termination.
    """
    if not (0.0 < M < 1.0):
        raise ValueError(f"threshold M must be in (0, 1), got {M}")
    if rule not in ("arctanh_ratio", "large_scale"):
        raise ValueError(f"unknown update_rule {rule!r}")
    mags = np.abs(np.asarray(soft, dtype=float))
    below = np.flatnonzero(mags < M)
    if below.size == 0:
        return float(alpha)
    pick = below[np.argmin(np.abs(mags[below] - M))]
    v = min(float(mags[pick]), 1.0 - 1e-12)
    if rule == "arctanh_ratio":
        denom = math.atanh(v)
    else:
        denom = v
    if denom == 0.0:
        return math.inf
    return float(alpha) * math.atanh(M) / denom


def solve_iterative(cfg: PceConfig) -> SolveOutcome:
    """Iterative-alpha run; outcome carries the per-iteration history.

    A proposed alpha beyond alpha_cap is clamped to the cap and one last
    inner optimization runs there before termination: at the cap tanh is
    saturated for any practical expectation value, so that final run works
    on the effectively discrete landscape and no further update can help.
    """
    if cfg.alpha_mode != "iterative":
        raise ValueError("solve_iterative expects alpha_mode='iterative'")
    rt = _Runtime(cfg)
    theta = random_init(rt.dim, cfg.seed)
    base_spec = cfg.objective
    alpha = float(cfg.alpha0)
    history: list[IterationRecord] = []
    total_evals = 0
    capped = False
    at_cap = False

    for outer in range(1, cfg.max_outer_iters + 1):
        spec = replace(base_spec, alpha=alpha)
        result = minimize(rt.loss_fn(spec), theta, cfg.optimizer)
        theta = result.best_params
        total_evals += result.evals
        e = rt.expectations(theta)
        soft = soft_values(np.clip(e, -1.0, 1.0), alpha)
        proposed = next_alpha(soft, alpha, cfg.M, cfg.update_rule)
        done = proposed == alpha
        stalled = (not done) and math.isfinite(proposed) and proposed < alpha * STALL_FACTOR
        history.append(
            IterationRecord(
                outer_iter=outer,
                alpha=alpha,
                loss=result.best_value,
                binarization=binarization(soft),
                minus_count=int(np.sum(decode(e) == -1)),
                evals=result.evals,
                stalled=stalled,
            )
        )
        if done or at_cap:
            break
        if not math.isfinite(proposed) or proposed > cfg.alpha_cap:
            capped = True
            at_cap = True
            alpha = cfg.alpha_cap
        else:
            alpha = proposed

    return _finish(rt, base_spec, theta, alpha, total_evals,
                   outer_iters=len(history), capped=capped, history=history)


def solve(cfg: PceConfig) -> SolveOutcome:
    """Dispatch on alpha_mode."""
    return solve_iterative(cfg) if cfg.alpha_mode == "iterative" else solve_pce(cfg)


def control_config(outcome: SolveOutcome, cfg: PceConfig) -> PceConfig:
    """Config of the paired control: fixed mode at the reached alpha, offset seed."""
    return replace(
        cfg,
        alpha_mode="fixed",
        seed=cfg.seed + CONTROL_SEED_OFFSET,
        objective=replace(cfg.objective, alpha=outcome.final_alpha),
    )


def solve_pce_at_final_alpha(outcome: SolveOutcome, cfg: PceConfig) -> SolveOutcome:
    """Paired control: a fresh fixed run at the alpha the iterative run reached.

    Uses seed + CONTROL_SEED_OFFSET so the control draws its own starting
    angles but stays replayable from the original config.
    """
    return solve_pce(control_config(outcome, cfg))
