"""Instances, coalition masks and the memoised subset-evaluation game.

Every explainer in this package talks to a model only through a
:class:`GameOracle`, which maps a :class:`SubsetMask` (the set of features
left visible) to the model's prediction on the correspondingly occluded
instance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Protocol, Sequence

#: Largest number of features that exact enumeration will accept.
EXHAUSTIVE_CAP = 20

#: Absolute tolerance used when deciding whether two game values are equal.
VALUE_EPS = 1e-9


class ContractViolation(ValueError):
    """An argument broke an operation's precondition."""


class CapacityError(RuntimeError):
    """Exact enumeration was requested on more features than the cap allows."""


class EmptyInstanceError(ValueError):
    """An instance would have no features."""


class UnsupportedOcclusion(ContractViolation):
    """The model cannot be evaluated under the requested occlusion policy."""


class ModelEvaluationError(RuntimeError):
    """The model raised while being evaluated on a particular mask."""

    def __init__(self, mask: "SubsetMask", cause: BaseException):
        super().__init__(f"model evaluation failed on mask {mask}: {cause!r}")
        self.mask = mask
        self.cause = cause


@dataclass(frozen=True)
class Feature:
    """One input feature.

    Text features carry only ``surface``. Numeric features use ``surface``
    as the feature name and carry a real ``value``.
    """

    position: int
    surface: str
    value: float | None = None

    @property
    def is_numeric(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class Instance:
    features: tuple[Feature, ...]

    def __post_init__(self):
        if not self.features:
            raise EmptyInstanceError("an instance needs at least one feature")
        for i, f in enumerate(self.features):
            if f.position != i:
                raise ContractViolation(
                    f"feature positions must be 0..n-1 in order, got {f.position} at {i}"
                )
        if len({f.is_numeric for f in self.features}) > 1:
            raise ContractViolation("an instance mixes text and numeric features")

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "Instance":
        return cls(tuple(Feature(i, t) for i, t in enumerate(tokens)))

    @classmethod
    def from_values(
        cls, values: Sequence[float], names: Sequence[str] | None = None
    ) -> "Instance":
        if names is None:
            names = [f"x{i + 1}" for i in range(len(values))]
        if len(names) != len(values):
            raise ContractViolation("one name per value is required")
        return cls(
            tuple(Feature(i, n, float(v)) for i, (n, v) in enumerate(zip(names, values)))
        )

    def __len__(self) -> int:
        return len(self.features)

    def __getitem__(self, i: int) -> Feature:
        return self.features[i]

    def __iter__(self) -> Iterator[Feature]:
        return iter(self.features)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(f.surface for f in self.features)

    @property
    def is_numeric(self) -> bool:
        return self.features[0].is_numeric

    def values(self) -> tuple[float, ...]:
        if not self.is_numeric:
            raise ContractViolation("text instance has no numeric values")
        return tuple(f.value for f in self.features)

    def delete_absent(self, mask: "SubsetMask") -> tuple[Feature, ...]:
        """The present features, renumbered from 0. May be empty."""
        kept = [self.features[i] for i in mask.positions()]
        return tuple(Feature(k, f.surface, f.value) for k, f in enumerate(kept))


@dataclass(frozen=True, order=True)
class SubsetMask:
    """Presence flags over ``size`` positions, packed into an int.

    Bit ``i`` of ``bits`` is set when feature ``i`` is present.
    """

    size: int
    bits: int

    def __post_init__(self):
        if self.size < 0:
            raise ContractViolation("mask size must be nonnegative")
        if self.bits < 0 or self.bits >> self.size:
            raise ContractViolation(f"bits {self.bits:#b} do not fit in {self.size} positions")

    @classmethod
    def full(cls, size: int) -> "SubsetMask":
        return cls(size, (1 << size) - 1)

    @classmethod
    def empty(cls, size: int) -> "SubsetMask":
        return cls(size, 0)

    @classmethod
    def from_positions(cls, size: int, positions: Iterable[int]) -> "SubsetMask":
        bits = 0
        for p in positions:
            if not 0 <= p < size:
                raise ContractViolation(f"position {p} out of range for size {size}")
            bits |= 1 << p
        return cls(size, bits)

    @classmethod
    def from_flags(cls, flags: Sequence[bool]) -> "SubsetMask":
        return cls.from_positions(len(flags), (i for i, f in enumerate(flags) if f))

    def __contains__(self, position: int) -> bool:
        return bool(self.bits >> position & 1)

    def positions(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.bits >> i & 1)

    def flags(self) -> tuple[bool, ...]:
        return tuple(bool(self.bits >> i & 1) for i in range(self.size))

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    def with_(self, position: int) -> "SubsetMask":
        return SubsetMask(self.size, self.bits | 1 << position)

    def without(self, position: int) -> "SubsetMask":
        return SubsetMask(self.size, self.bits & ~(1 << position))

    def is_subset(self, other: "SubsetMask") -> bool:
        return self.bits & ~other.bits == 0

    def is_proper_subset(self, other: "SubsetMask") -> bool:
        return self.bits != other.bits and self.is_subset(other)

    def isdisjoint(self, other: "SubsetMask") -> bool:
        return self.bits & other.bits == 0

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.positions())) + "}"


class OcclusionPolicy(enum.Enum):
    """How absent features are removed before the model sees the input.

    ``OCCLUDE`` keeps every position and marks absent features as neutral
    placeholders. ``DELETE`` drops them and renumbers the survivors.
    """

    OCCLUDE = "occlude"
    DELETE = "delete"


class Model(Protocol):
    """Anything that predicts on an instance with some features occluded.

    ``supports_deletion`` must be False for models whose output depends on
    token positions or distances. Models that set it to True also provide
    ``predict_deleted(features)``, called with the surviving features
    renumbered from 0.
    """

    supports_deletion: bool

    def predict(self, instance: Instance, mask: SubsetMask) -> float: ...

    def candidate_positions(self, instance: Instance) -> Sequence[int] | None:
        """A superset of the positions that can influence the output, or None."""
        ...


def mask_from_subset(subset: int, universe: Sequence[int], size: int) -> SubsetMask:
    """Embed a bitmask over ``universe`` into a full-instance mask."""
    bits = 0
    k = 0
    while subset:
        if subset & 1:
            bits |= 1 << universe[k]
        subset >>= 1
        k += 1
    return SubsetMask(size, bits)


def check_capacity(count: int, what: str = "relevant features") -> None:
    if count > EXHAUSTIVE_CAP:
        raise CapacityError(
            f"{count} {what} exceed the exhaustive cap of {EXHAUSTIVE_CAP}"
        )


class GameOracle:
    """The set function v(S) = m(x restricted to S), with memoisation.

    Not thread-safe: concurrent callers that may fill the cache must
    serialise access themselves.
    """

    def __init__(
        self,
        model: Model,
        instance: Instance,
        policy: OcclusionPolicy = OcclusionPolicy.OCCLUDE,
    ):
        if policy is OcclusionPolicy.DELETE and not getattr(model, "supports_deletion", False):
            raise UnsupportedOcclusion(
                f"{type(model).__name__} depends on token positions; deletion is unsupported"
            )
        self.model = model
        self.instance = instance
        self.policy = policy
        self.cache: dict[int, float] = {}
        self.eval_count = 0
        self._relevant: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.instance)

    def full_mask(self) -> SubsetMask:
        return SubsetMask.full(self.n)

    def empty_mask(self) -> SubsetMask:
        return SubsetMask.empty(self.n)

    def __call__(self, mask: SubsetMask) -> float:
        return evaluate_subset(self, mask)

    @property
    def prediction(self) -> float:
        return self(self.full_mask())

    @property
    def baseline(self) -> float:
        return self(self.empty_mask())

    def _evaluate_uncached(self, mask: SubsetMask) -> float:
        if self.policy is OcclusionPolicy.DELETE:
            return float(self.model.predict_deleted(self.instance.delete_absent(mask)))
        return float(self.model.predict(self.instance, mask))


def evaluate_subset(oracle: GameOracle, mask: SubsetMask) -> float:
    """Model output with exactly the features outside ``mask`` removed."""
    if mask.size != oracle.n:
        raise ContractViolation(
            f"mask covers {mask.size} positions but the instance has {oracle.n}"
        )
    try:
        return oracle.cache[mask.bits]
    except KeyError:
        pass
    try:
        value = oracle._evaluate_uncached(mask)
    except Exception as exc:
        raise ModelEvaluationError(mask, exc) from exc
    oracle.eval_count += 1
    oracle.cache[mask.bits] = value
    return value


def relevant_features(oracle: GameOracle) -> tuple[int, ...]:
    """Positions whose presence changes the prediction for some coalition.

    Positions outside the model's declared candidate set (or, without a
    declaration, none) are dummies by construction. The remaining
    candidates are checked exhaustively: position i is relevant iff some
    coalition S of the other candidates has v(S + i) != v(S).
    """
    if oracle._relevant is not None:
        return oracle._relevant
    hint = None
    candidate_fn = getattr(oracle.model, "candidate_positions", None)
    if candidate_fn is not None:
        hint = candidate_fn(oracle.instance)
    candidates = tuple(range(oracle.n)) if hint is None else tuple(sorted(set(hint)))
    check_capacity(len(candidates), "candidate features")

    k = len(candidates)
    values = [oracle(mask_from_subset(s, candidates, oracle.n)) for s in range(1 << k)]
    relevant = []
    for j, pos in enumerate(candidates):
        bit = 1 << j
        if any(
            abs(values[s | bit] - values[s]) > VALUE_EPS
            for s in range(1 << k)
            if not s & bit
        ):
            relevant.append(pos)
    check_capacity(len(relevant))
    oracle._relevant = tuple(relevant)
    return oracle._relevant


def subset_values(oracle: GameOracle, universe: Sequence[int]) -> list[float]:
    """v over every subset of ``universe``, indexed by the packed subset bits."""
    check_capacity(len(universe))
    return [oracle(mask_from_subset(s, universe, oracle.n)) for s in range(1 << len(universe))]
