"""Minimal sufficient subsets of a subset-evaluation game.

A subset S is sufficient when |v(S) - v(full)| < tolerance, and minimal when
no proper subset of S is sufficient. Gaps within float epsilon of the
tolerance count as equal to it, hence as not sufficient (0.7 - 0.6 is not
below 0.1). Sufficiency is not monotone for occlusion games, so minimality
is checked against every proper subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .core import (
    VALUE_EPS,
    ContractViolation,
    GameOracle,
    Instance,
    SubsetMask,
    mask_from_subset,
    relevant_features,
    subset_values,
)

DEFAULT_TOLERANCE = 0.1


def canonical_key(mask: SubsetMask) -> tuple[int, tuple[int, ...]]:
    """Sort key: cardinality first, then the sorted positions."""
    return mask.cardinality, mask.positions()


@dataclass(frozen=True)
class MssExplanation:
    instance: Instance
    tolerance: float
    prediction: float
    subsets: tuple[SubsetMask, ...]

    def surfaces(self) -> list[list[str]]:
        return [[self.instance[i].surface for i in m.positions()] for m in self.subsets]

    def union(self) -> set[int]:
        return {i for m in self.subsets for i in m.positions()}

    def to_dict(self, disjoint: Sequence[SubsetMask] | None = None) -> dict[str, Any]:
        def rows(mask):
            return [{"index": i, "surface": self.instance[i].surface} for i in mask.positions()]

        data: dict[str, Any] = {
            "tolerance": self.tolerance,
            "prediction": self.prediction,
            "subsets": [rows(m) for m in self.subsets],
        }
        if disjoint is not None:
            data["disjoint"] = [rows(m) for m in disjoint]
        return data

    @classmethod
    def from_dict(
        cls, data: dict[str, Any], instance: Instance
    ) -> tuple["MssExplanation", list[SubsetMask] | None]:
        """Rebuild an explanation (and the disjoint list, if present).

        The JSON shape lists only member features, so the instance must be
        supplied.
        """
        n = len(instance)

        def mask(rows):
            for r in rows:
                if instance[r["index"]].surface != r["surface"]:
                    raise ContractViolation(
                        f"surface {r['surface']!r} does not match position {r['index']}"
                    )
            return SubsetMask.from_positions(n, [r["index"] for r in rows])

        expl = cls(
            instance,
            float(data["tolerance"]),
            float(data["prediction"]),
            tuple(mask(rows) for rows in data["subsets"]),
        )
        disjoint = None
        if "disjoint" in data:
            disjoint = [mask(rows) for rows in data["disjoint"]]
        return expl, disjoint


def _check_tolerance(tolerance: float) -> None:
    if not tolerance > 0:
        raise ContractViolation(f"tolerance must be positive, got {tolerance}")


def _close(value: float, target: float, tolerance: float) -> bool:
    gap = abs(value - target)
    return gap <= VALUE_EPS or gap < tolerance - VALUE_EPS


def is_sufficient(oracle: GameOracle, mask: SubsetMask, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    _check_tolerance(tolerance)
    return _close(oracle(mask), oracle.prediction, tolerance)


def _by_cardinality(r: int) -> list[int]:
    """All subsets of r players by size, then by sorted member positions."""

    def key(s):
        members = tuple(j for j in range(r) if s >> j & 1)
        return len(members), members

    return sorted(range(1 << r), key=key)


def enumerate_mss(oracle: GameOracle, tolerance: float = DEFAULT_TOLERANCE) -> MssExplanation:
    """Every minimal sufficient subset, smallest first.

    Subsets are swept in increasing size. A sufficient subset is minimal
    exactly when it contains no earlier-found minimal one: any sufficient
    proper subset would itself contain a smaller minimal sufficient subset.
    """
    _check_tolerance(tolerance)
    relevant = relevant_features(oracle)
    values = subset_values(oracle, relevant)
    target = oracle.prediction
    found: list[int] = []
    for s in _by_cardinality(len(relevant)):
        if _close(values[s], target, tolerance) and not any(m & ~s == 0 for m in found):
            found.append(s)
    masks = [mask_from_subset(s, relevant, oracle.n) for s in found]
    masks.sort(key=canonical_key)
    return MssExplanation(oracle.instance, tolerance, target, tuple(masks))


def disjoint_mss(oracle: GameOracle, tolerance: float = DEFAULT_TOLERANCE) -> list[SubsetMask]:
    """Greedy retrieval of pairwise-disjoint sufficient subsets.

    Each round takes the smallest sufficient subset of the features still
    available (ties broken by position), then removes its features from the
    pool. Sufficiency is always judged against the original full prediction.
    The smallest sufficient subset of a pool has no sufficient proper
    subset in that pool, so each pick is minimal.
    """
    _check_tolerance(tolerance)
    relevant = relevant_features(oracle)
    values = subset_values(oracle, relevant)
    target = oracle.prediction
    order = _by_cardinality(len(relevant))
    pool = (1 << len(relevant)) - 1
    picked: list[SubsetMask] = []
    while True:
        choice = next(
            (s for s in order if s & ~pool == 0 and _close(values[s], target, tolerance)),
            None,
        )
        if choice is None:
            break
        picked.append(mask_from_subset(choice, relevant, oracle.n))
        if choice == 0:
            break
        pool &= ~choice
    return picked
