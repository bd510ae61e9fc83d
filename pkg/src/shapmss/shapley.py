"""Shapley attributions of a subset-evaluation game.

Exact values use the subset form of the Shapley formula,

    w_i = sum over S not containing i of |S|! (n - |S| - 1)! / n! * (v(S + i) - v(S)),

evaluated over the relevant features only. Features that never change the
game value contribute nothing to any marginal, so dropping them from the
player set leaves every weight unchanged and gives them weight 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import (
    VALUE_EPS,
    ContractViolation,
    Feature,
    GameOracle,
    Instance,
    mask_from_subset,
    relevant_features,
    subset_values,
)


@dataclass(frozen=True)
class ShapleyExplanation:
    instance: Instance
    weights: tuple[float, ...]
    baseline: float
    prediction: float
    method: str = "exact"
    permutations: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if len(self.weights) != len(self.instance):
            raise ContractViolation("one weight per feature is required")

    @property
    def is_exact(self) -> bool:
        return self.method == "exact"

    def weight_of(self, surface: str, occurrence: int = 0) -> float:
        """Weight of the ``occurrence``-th feature with this surface form."""
        hits = [f.position for f in self.instance if f.surface == surface]
        if occurrence >= len(hits):
            raise KeyError(f"{surface!r} occurrence {occurrence} not in instance")
        return self.weights[hits[occurrence]]

    def ranking(self) -> list[int]:
        """Positions by decreasing absolute weight, ties in position order."""
        return sorted(range(len(self.weights)), key=lambda i: (-abs(self.weights[i]), i))

    def to_dict(self) -> dict[str, Any]:
        positions = []
        for f, w in zip(self.instance, self.weights):
            row: dict[str, Any] = {"index": f.position, "surface": f.surface, "weight": w}
            if f.is_numeric:
                row["value"] = f.value
            positions.append(row)
        method: dict[str, Any] | str = self.method
        if self.method == "sampled":
            method = {"sampled": {"permutations": self.permutations, "seed": self.seed}}
        return {
            "positions": positions,
            "baseline": self.baseline,
            "prediction": self.prediction,
            "method": method,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ShapleyExplanation":
        rows = sorted(data["positions"], key=lambda r: r["index"])
        instance = Instance(
            tuple(Feature(r["index"], r["surface"], r.get("value")) for r in rows)
        )
        method = data["method"]
        permutations = seed = None
        if isinstance(method, dict):
            permutations = method["sampled"]["permutations"]
            seed = method["sampled"]["seed"]
            method = "sampled"
        return cls(
            instance,
            tuple(float(r["weight"]) for r in rows),
            float(data["baseline"]),
            float(data["prediction"]),
            method,
            permutations,
            seed,
        )


def shapley_coefficients(n: int) -> np.ndarray:
    """|S|! (n - |S| - 1)! / n! for |S| = 0..n-1."""
    return np.array(
        [math.factorial(s) * math.factorial(n - s - 1) / math.factorial(n) for s in range(n)]
    )


def exact_shapley(oracle: GameOracle) -> ShapleyExplanation:
    relevant = relevant_features(oracle)
    r = len(relevant)
    weights = np.zeros(oracle.n)
    if r:
        values = np.asarray(subset_values(oracle, relevant))
        subsets = np.arange(1 << r)
        sizes = np.array([int(s).bit_count() for s in range(1 << r)])
        coef = shapley_coefficients(r)
        for j, pos in enumerate(relevant):
            without = subsets[(subsets >> j) & 1 == 0]
            marginals = values[without | (1 << j)] - values[without]
            weights[pos] = float(np.dot(coef[sizes[without]], marginals))
    return ShapleyExplanation(
        oracle.instance,
        tuple(float(w) for w in weights),
        oracle.baseline,
        oracle.prediction,
    )


def sampled_shapley(oracle: GameOracle, permutations: int, seed: int) -> ShapleyExplanation:
    """Monte Carlo Shapley estimate from uniformly drawn player orderings.

    Orderings come in antithetic pairs: every odd draw walks the previous
    ordering reversed. Each ordering is still uniform on its own, and the
    pairing cancels much of the variance (two-player games come out exact).
    The result depends only on ``(seed, permutations)``.
    """
    if permutations < 1:
        raise ContractViolation("permutations must be at least 1")
    relevant = relevant_features(oracle)
    rng = np.random.default_rng(seed)
    totals = np.zeros(oracle.n)
    if len(relevant):
        start = oracle(mask_from_subset(0, relevant, oracle.n))
        order = None
        for k in range(permutations):
            order = rng.permutation(len(relevant)) if k % 2 == 0 else order[::-1]
            subset = 0
            previous = start
            for j in order:
                subset |= 1 << int(j)
                current = oracle(mask_from_subset(subset, relevant, oracle.n))
                totals[relevant[j]] += current - previous
                previous = current
    weights = totals / permutations
    return ShapleyExplanation(
        oracle.instance,
        tuple(float(w) for w in weights),
        oracle.baseline,
        oracle.prediction,
        method="sampled",
        permutations=permutations,
        seed=seed,
    )


@dataclass
class AxiomReport:
    local_accuracy: bool
    missingness: bool
    symmetry: bool
    efficiency_gap: float
    nonzero_dummies: list[int] = field(default_factory=list)
    asymmetric_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return self.local_accuracy and self.missingness and self.symmetry


def interchangeable(values: list[float], j: int, k: int) -> bool:
    """Whether players j and k add the same value to every coalition lacking both."""
    bj, bk = 1 << j, 1 << k
    return all(
        abs(values[s | bj] - values[s | bk]) <= VALUE_EPS
        for s in range(len(values))
        if not s & (bj | bk)
    )


def check_axioms(expl: ShapleyExplanation, oracle: GameOracle, tol: float = VALUE_EPS) -> AxiomReport:
    """Check efficiency, missingness and symmetry of an exact explanation."""
    if not expl.is_exact:
        raise ContractViolation("axioms are only checked for exact explanations")
    if len(expl.weights) != oracle.n:
        raise ContractViolation("explanation and oracle cover different instances")

    gap = sum(expl.weights) - (oracle.prediction - oracle.baseline)
    relevant = relevant_features(oracle)
    dummies = [i for i in range(oracle.n) if i not in set(relevant)]
    nonzero_dummies = [i for i in dummies if abs(expl.weights[i]) > tol]

    values = subset_values(oracle, relevant)
    asymmetric = []
    for a in range(len(relevant)):
        for b in range(a + 1, len(relevant)):
            if interchangeable(values, a, b):
                i, k = relevant[a], relevant[b]
                if abs(expl.weights[i] - expl.weights[k]) > tol:
                    asymmetric.append((i, k))
    return AxiomReport(
        local_accuracy=abs(gap) <= tol,
        missingness=not nonzero_dummies,
        symmetry=not asymmetric,
        efficiency_gap=gap,
        nonzero_dummies=nonzero_dummies,
        asymmetric_pairs=asymmetric,
    )
