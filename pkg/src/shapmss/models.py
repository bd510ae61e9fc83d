"""Rule-based models whose inner workings are fully known.

Three families are provided:

* :class:`PatternPriorityModel`: an ordered list of ``"phrase" => value``
  rules where the first phrase found in the input decides the output.
* :class:`AspectSentimentModel`: a lexicon model that attaches every
  sentiment word to its nearest aspect word and scores aspects.
* :class:`NumericGame`: ``min`` or ``max`` over real inputs, with a zero
  baseline for absent inputs.

All of them are evaluated under occlusion: an absent token stays in place
as a neutral placeholder, so distances between present tokens never change.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .core import ContractViolation, EmptyInstanceError, Feature, Instance, SubsetMask

SEPARATORS = ".,!?;:"


class ModelSpecError(ValueError):
    """A model description could not be parsed."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.message = message
        self.line = line
        self.field = field


class ModelValidationError(ModelSpecError):
    """A model description parsed but holds out-of-range values."""


def tokenize(text: str) -> Instance:
    """Split on whitespace and strip leading/trailing separators from each token."""
    tokens = [t.strip(SEPARATORS) for t in text.split()]
    tokens = [t for t in tokens if t]
    if not tokens:
        raise EmptyInstanceError(f"no tokens in {text!r}")
    return Instance.from_tokens(tokens)


def _clamp(x: float, lo: float = -1.0, hi: float = 1.0) -> float:
    return max(min(x, hi), lo)


def _check_mask(instance: Instance, mask: SubsetMask) -> None:
    if mask.size != len(instance):
        raise ContractViolation(
            f"mask covers {mask.size} positions but the instance has {len(instance)}"
        )


@dataclass(frozen=True)
class PatternPriorityModel:
    """``if phrase_1 in input: return out_1 elif ... else return default``.

    A phrase matches when all its tokens are present at consecutive
    positions. An occluded token in between breaks the match.
    """

    rules: tuple[tuple[tuple[str, ...], float], ...]
    default: float = 0.0
    name: str = "pattern"
    supports_deletion = False

    def __post_init__(self):
        if not self.rules:
            raise ModelValidationError("a pattern model needs at least one rule")
        for pattern, _ in self.rules:
            if not pattern or any(not t for t in pattern):
                raise ModelValidationError(f"empty token in pattern {pattern!r}")

    def predict(self, instance: Instance, mask: SubsetMask) -> float:
        return predict_pattern(self, instance, mask)

    def candidate_positions(self, instance: Instance) -> list[int]:
        vocab = {t for pattern, _ in self.rules for t in pattern}
        return [f.position for f in instance if f.surface in vocab]


def _pattern_matches(pattern: Sequence[str], surfaces: Sequence[str], mask: SubsetMask) -> bool:
    k = len(pattern)
    for start in range(len(surfaces) - k + 1):
        if all(
            start + j in mask and surfaces[start + j] == pattern[j] for j in range(k)
        ):
            return True
    return False


def predict_pattern(model: PatternPriorityModel, instance: Instance, mask: SubsetMask) -> float:
    _check_mask(instance, mask)
    surfaces = instance.surfaces
    for pattern, output in model.rules:
        if _pattern_matches(pattern, surfaces, mask):
            return output
    return model.default


@dataclass(frozen=True)
class AspectSentimentModel:
    """Aspect-based lexicon sentiment model.

    ``aspects`` maps every accepted surface form to its aspect name, e.g.
    ``{"taste": "taste", "Tastes": "taste"}``. ``head`` is ``"overall"``
    (clamped sum of aspect scores) or ``"aspect:<name>"`` (one aspect's
    score, 0 when that aspect is absent).
    """

    aspects: Mapping[str, str]
    sentiments: Mapping[str, float]
    head: str = "overall"
    name: str = "aspect"
    supports_deletion = False

    def __post_init__(self):
        if not self.aspects:
            raise ModelValidationError("no aspect words given", field="aspects")
        for word, score in self.sentiments.items():
            if not -1.0 <= score <= 1.0:
                raise ModelValidationError(
                    f"sentiment score {score} for {word!r} is outside [-1, 1]",
                    field="sentiments",
                )
            if score == 0:
                raise ModelValidationError(
                    f"sentiment score for {word!r} is 0; neutral words must be left out",
                    field="sentiments",
                )
        overlap = set(self.aspects) & set(self.sentiments)
        if overlap:
            raise ModelValidationError(
                f"words are both aspect and sentiment: {sorted(overlap)}"
            )
        target = self.target_aspect
        if target is not None and target not in set(self.aspects.values()):
            raise ModelValidationError(f"unknown head aspect {target!r}", field="head")

    @property
    def target_aspect(self) -> str | None:
        if self.head == "overall":
            return None
        kind, _, aspect = self.head.partition(":")
        if kind != "aspect" or not aspect:
            raise ModelSpecError(f"unknown head {self.head!r}", field="head")
        return aspect

    def predict(self, instance: Instance, mask: SubsetMask) -> float:
        return predict_aspect(self, instance, mask)

    def candidate_positions(self, instance: Instance) -> list[int]:
        return [
            f.position
            for f in instance
            if f.surface in self.aspects or f.surface in self.sentiments
        ]

    def aspect_scores(self, instance: Instance, mask: SubsetMask) -> dict[str, float]:
        """Score of every aspect that has at least one present aspect word."""
        _check_mask(instance, mask)
        present = [f for f in instance if f.position in mask]
        aspect_positions = [f.position for f in present if f.surface in self.aspects]
        if not aspect_positions:
            return {}
        attached: dict[str, list[float]] = {
            self.aspects[instance[p].surface]: [] for p in aspect_positions
        }
        for f in present:
            score = self.sentiments.get(f.surface)
            if score is None:
                continue
            # ties go to the leftmost aspect word
            nearest = min(aspect_positions, key=lambda p: (abs(p - f.position), p))
            attached[self.aspects[instance[nearest].surface]].append(score)
        return {aspect: _aggregate(scores) for aspect, scores in attached.items()}


def _aggregate(scores: list[float]) -> float:
    if not scores:
        return 0.0
    if all(s > 0 for s in scores) or all(s < 0 for s in scores):
        return max(scores, key=abs)
    return _clamp(sum(scores))


def predict_aspect(model: AspectSentimentModel, instance: Instance, mask: SubsetMask) -> float:
    scores = model.aspect_scores(instance, mask)
    target = model.target_aspect
    if target is None:
        return _clamp(sum(scores.values()))
    return scores.get(target, 0.0)


@dataclass(frozen=True)
class NumericGame:
    """``min`` or ``max`` over real inputs; an absent input counts as 0."""

    kind: str
    arity: int
    name: str = "numeric"
    supports_deletion = False

    def __post_init__(self):
        if self.kind not in ("min", "max"):
            raise ModelSpecError(f"unknown numeric kind {self.kind!r}", field="kind")
        if self.arity < 1:
            raise ModelValidationError("arity must be at least 1", field="arity")

    def predict(self, instance: Instance, mask: SubsetMask) -> float:
        return predict_numeric(self, instance.values(), mask)

    def candidate_positions(self, instance: Instance) -> None:
        return None


def predict_numeric(game: NumericGame, values: Sequence[float], mask: SubsetMask) -> float:
    if len(values) != game.arity:
        raise ContractViolation(f"{game.kind} game takes {game.arity} values, got {len(values)}")
    if mask.size != len(values):
        raise ContractViolation("mask length does not match the number of values")
    occluded = [v if i in mask else 0.0 for i, v in enumerate(values)]
    return float(min(occluded) if game.kind == "min" else max(occluded))


@dataclass(frozen=True)
class ConstantModel:
    value: float = 0.0
    name: str = "constant"
    supports_deletion = True

    def predict(self, instance: Instance, mask: SubsetMask) -> float:
        return self.value

    def predict_deleted(self, features: Sequence[Feature]) -> float:
        return self.value

    def candidate_positions(self, instance: Instance) -> list[int]:
        return []


@dataclass(frozen=True)
class FunctionModel:
    """Adapter for a plain function of the present features.

    ``fn`` receives the tuple of present features (original positions under
    occlusion, renumbered under deletion) and returns a real number. Such a
    model cannot see placeholders, so both occlusion policies are allowed.
    """

    fn: Callable[[tuple[Feature, ...]], float]
    name: str = "function"
    supports_deletion = True
    candidates: tuple[int, ...] | None = field(default=None)

    def predict(self, instance: Instance, mask: SubsetMask) -> float:
        _check_mask(instance, mask)
        return float(self.fn(tuple(instance[i] for i in mask.positions())))

    def predict_deleted(self, features: Sequence[Feature]) -> float:
        return float(self.fn(tuple(features)))

    def candidate_positions(self, instance: Instance) -> tuple[int, ...] | None:
        return self.candidates
