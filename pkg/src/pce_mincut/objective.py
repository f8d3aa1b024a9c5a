"""The constrained soft-cut loss, its penalty heuristic, and decoding.

The loss relaxes each binary node variable to tanh(alpha * <P_i>):

    L = sum_{i<j} d_ij/2 * (1 - t_i t_j)  +  beta * (sum_i t_i - (n - 2c))^2

with t_i the soft value of node i. The penalty pins the number of -1 nodes
to the budget c: on fully binarized values, sum(z) = n - 2c holds exactly
when c entries are -1. Feasibility of a decoded assignment is checked
symmetrically (a c : n-c split equals an n-c : c split).

An optional regularizer eta * (mean(t^2))^2 discourages early saturation;
it defaults to off because it works against constraint satisfaction here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import EncodingSpec
from .graph import WeightedGraph, partition_count

__all__ = [
    "ObjectiveSpec",
    "soft_values",
    "loss",
    "regularization",
    "beta_c",
    "decode",
    "is_feasible",
    "binarization",
    "plateau_width",
    "BINARIZED_THRESHOLD",
]

# magnitude above which a soft value counts as binarized
BINARIZED_THRESHOLD = 0.9


@dataclass(frozen=True)
class ObjectiveSpec:
    """Loss definition for one instance; immutable and shareable across runs.

    beta defaults (None) to the degree-sum heuristic beta_c(graph, c), which
    upper-bounds every size-c cut and needs no per-instance tuning.
    """

    graph: WeightedGraph
    encoding: EncodingSpec
    alpha: float
    c: int
    beta: float | None = None
    eta: float = 0.0

    def __post_init__(self) -> None:
        n = self.graph.n
        if not (1 <= self.c <= n // 2):
            raise ValueError(f"c must be in [1, n/2] = [1, {n // 2}], got {self.c}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.eta < 0:
            raise ValueError(f"eta must be non-negative, got {self.eta}")
        if self.encoding.n_vars != n:
            raise ValueError(
                f"encoding holds {self.encoding.n_vars} variables, graph has {n} nodes"
            )
        if self.beta is None:
            object.__setattr__(self, "beta", beta_c(self.graph, self.c))
        elif self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")
        else:
            object.__setattr__(self, "beta", float(self.beta))


def soft_values(expectations, alpha: float) -> np.ndarray:
    """Elementwise tanh(alpha * e): the continuous relaxation of the bitstring."""
    e = np.asarray(expectations, dtype=float)
    if np.any(np.abs(e) > 1.0 + 1e-9):
        raise ValueError("expectation values must lie in [-1, 1]")
    return np.tanh(alpha * e)


def loss(spec: ObjectiveSpec, expectations) -> float:
    """Soft cut weight plus the budget penalty (plus regularizer when eta > 0)."""
    e = np.asarray(expectations, dtype=float)
    n = spec.graph.n
    if e.shape != (n,):
        raise ValueError(f"expected {n} expectation values, got shape {e.shape}")
    t = np.tanh(spec.alpha * e)
    w = spec.graph.weights
    value = 0.25 * (w.sum() - t @ w @ t)
    value += spec.beta * (t.sum() - (n - 2 * spec.c)) ** 2
    if spec.eta > 0:
        value += regularization(t, spec.eta, n)
    return float(value)


def regularization(values, eta: float, n: int) -> float:
    """eta * (mean of squared soft values)^2; zero at the all-zero point."""
    if eta < 0:
        raise ValueError("eta must be non-negative")
    v = np.asarray(values, dtype=float)
    return float(eta * (np.sum(v * v) / n) ** 2)


def beta_c(g: WeightedGraph, c: int) -> float:
    """Penalty strength: sum of the c largest weighted degrees.

    This upper-bounds the weight of any cut that separates c nodes, so the
    penalty term always dominates an unsatisfied budget.
    """
    if not (1 <= c <= g.n // 2):
        raise ValueError(f"c must be in [1, n/2], got {c}")
    deg = np.sort(g.degrees)
    return float(deg[-c:].sum())


def decode(expectations) -> np.ndarray:
    """Sign of each expectation value; ties at exactly zero go to +1."""
    e = np.asarray(expectations, dtype=float)
    return np.where(e >= 0.0, 1, -1).astype(int)


def is_feasible(z, c: int) -> bool:
    """True iff the assignment splits the nodes c : n-c (either labeling)."""
    counts = partition_count(z)
    return min(counts) == c


def binarization(values, threshold: float = BINARIZED_THRESHOLD) -> float:
    """Fraction of soft values with magnitude strictly above the threshold."""
    v = np.asarray(values, dtype=float)
    return float(np.mean(np.abs(v) > threshold))


def plateau_width(alpha: float, level: float = 0.99) -> float:
    """Distance between the points where |tanh(alpha*x)| crosses the level.

    Equals 2*arctanh(level)/alpha; halves whenever alpha doubles, which is
    why large alpha flattens the loss landscape outside a shrinking band.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if not (0.0 < level < 1.0):
        raise ValueError("level must be in (0, 1)")
    return 2.0 * math.atanh(level) / alpha
