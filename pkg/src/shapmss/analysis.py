"""Side-by-side diagnostics of a Shapley and a minimal-sufficient-subset explanation.

The report flags phenomena that can be read off the two explanations of a
black box. It does not judge whether a phenomenon is genuine model
behaviour or an occlusion artefact; that needs knowledge of the model.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Sequence

from .core import VALUE_EPS, ContractViolation, SubsetMask
from .mss import MssExplanation
from .shapley import ShapleyExplanation

DEFAULT_THRESHOLD_FRACTION = 0.05


@dataclass(frozen=True)
class DivergenceReport:
    threshold: float
    redundant_features: tuple[int, ...]
    cancellation_present: bool
    positive_mass: float
    negative_mass: float
    multiple_mss: bool
    mss_count: int
    disjoint_incomplete: bool
    disjoint_count: int
    ranking: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["redundant_features"] = list(self.redundant_features)
        data["ranking"] = list(self.ranking)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DivergenceReport":
        data = dict(data)
        data["redundant_features"] = tuple(data["redundant_features"])
        data["ranking"] = tuple(data["ranking"])
        return cls(**data)


def diagnose(
    shap: ShapleyExplanation,
    mss: MssExplanation,
    disjoint: Sequence[SubsetMask],
    threshold: float | None = None,
) -> DivergenceReport:
    """Cross-examine the two explanation types for one prediction.

    ``threshold`` is the absolute weight above which a feature counts as
    flagged by the Shapley explanation; it defaults to 5% of
    ``|prediction - baseline|`` (or the float epsilon when that gap is 0).
    """
    n = len(shap.weights)
    if len(mss.instance) != n or any(m.size != n for m in disjoint):
        raise ContractViolation("explanations were computed on instances of different lengths")
    if threshold is None:
        threshold = DEFAULT_THRESHOLD_FRACTION * abs(shap.prediction - shap.baseline)
        threshold = max(threshold, VALUE_EPS)

    weights = shap.weights
    in_some_mss = mss.union()
    redundant = tuple(
        i for i in range(n) if abs(weights[i]) > threshold and i not in in_some_mss
    )
    positive = sum(w for w in weights if w > threshold)
    negative = sum(w for w in weights if w < -threshold)
    return DivergenceReport(
        threshold=threshold,
        redundant_features=redundant,
        cancellation_present=positive > 0 and negative < 0,
        positive_mass=positive,
        negative_mass=negative,
        multiple_mss=len(mss.subsets) > 1,
        mss_count=len(mss.subsets),
        disjoint_incomplete=len(disjoint) < len(mss.subsets),
        disjoint_count=len(disjoint),
        ranking=tuple(shap.ranking()),
    )
