"""Golden catalog of the worked examples.

Each case pairs a built-in model with an input and records the printed
reference values (prediction, Shapley table, minimal sufficient subsets).
Where exact enumeration under the documented rule semantics disagrees with a
printed value, the case carries the brute-force value as ``derived`` data
and a note explaining the difference; the catalog check then compares
against the derived value and reports the printed one alongside.

Features are named by ``(surface, occurrence)`` so that repeated words
(e.g. two "amazing" tokens) stay distinct.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .core import VALUE_EPS, GameOracle, Instance, SubsetMask
from .models import tokenize
from .modelspec import builtin_model
from .mss import DEFAULT_TOLERANCE, disjoint_mss, enumerate_mss
from .shapley import exact_shapley

FeatureRef = tuple[str, int]


@dataclass(frozen=True)
class FixtureCase:
    name: str
    model: str
    text: str | None = None
    values: tuple[float, ...] | None = None
    #: value printed next to the example
    printed_prediction: float | None = None
    #: value the catalog asserts (differs from the printed one only for a recorded typo)
    prediction: float = 0.0
    #: printed Shapley rows: (surface, occurrence, value, printed decimals or None if exact)
    printed_shapley: tuple[tuple[str, int, float, int | None], ...] = ()
    #: exact Shapley values from brute-force enumeration, when they differ from the print
    derived_shapley: tuple[tuple[str, int, Fraction], ...] | None = None
    printed_mss: tuple[tuple[FeatureRef, ...], ...] = ()
    #: the complete enumerated MSS set, from brute force
    full_mss: tuple[tuple[FeatureRef, ...], ...] = ()
    disjoint: tuple[tuple[FeatureRef, ...], ...] | None = None
    notes: tuple[str, ...] = ()
    annotations: dict[str, str] = field(default_factory=dict)

    def instance(self) -> Instance:
        if self.values is not None:
            return Instance.from_values(self.values)
        return tokenize(self.text)

    def oracle(self) -> GameOracle:
        return GameOracle(builtin_model(self.model), self.instance())


def _refs(*groups: Iterable[str | FeatureRef]) -> tuple[tuple[FeatureRef, ...], ...]:
    out = []
    for group in groups:
        out.append(tuple(g if isinstance(g, tuple) else (g, 0) for g in group))
    return tuple(out)


CATALOG: dict[str, FixtureCase] = {
    c.name: c
    for c in [
        FixtureCase(
            name="fig1_m_x1",
            model="fig1_m",
            text="The movie was good, it was actually nice.",
            printed_prediction=0.7,
            prediction=0.7,
            printed_shapley=(("nice", 0, 0.4, 2), ("good", 0, 0.3, 2)),
            printed_mss=_refs(["nice"]),
            full_mss=_refs(["nice"]),
            disjoint=_refs(["nice"]),
            annotations={"good": "redundant in presence of nice, informative in general"},
        ),
        FixtureCase(
            name="fig1_m_x2",
            model="fig1_m",
            text="The movie was nice, in fact, it was very good.",
            printed_prediction=0.9,
            prediction=0.9,
            printed_shapley=(("good", 0, 0.417, 3), ("nice", 0, 0.367, 3), ("very", 0, 0.116, 3)),
            printed_mss=_refs(["very", "good"]),
            full_mss=_refs(["very", "good"]),
            disjoint=_refs(["very", "good"]),
        ),
        FixtureCase(
            name="fig2_mO_xO",
            model="fig2_mO",
            text="The beer has an amazing appearance, a good smell, a bad taste.",
            printed_prediction=1.0,
            prediction=1.0,
            printed_shapley=(
                ("amazing", 0, 0.52, 2),
                ("good", 0, 0.40, 2),
                ("bad", 0, -0.23, 2),
                ("smell", 0, 0.15, 2),
                ("appearance", 0, 0.12, 2),
                ("taste", 0, 0.03, 2),
            ),
            derived_shapley=(
                ("amazing", 0, Fraction(63, 100)),
                ("good", 0, Fraction(33, 100)),
                ("bad", 0, Fraction(-3, 10)),
                ("smell", 0, Fraction(23, 150)),
                ("appearance", 0, Fraction(23, 150)),
                ("taste", 0, Fraction(1, 30)),
            ),
            printed_mss=_refs(["amazing", "appearance"]),
            full_mss=_refs(["amazing", "appearance"], ["amazing", "smell"], ["amazing", "taste"]),
            notes=(
                "printed Shapley table does not follow from the aspect rules under occlusion; "
                "exact enumeration gives amazing 0.63, good 0.33, bad -0.30, smell 0.153, "
                "appearance 0.153, taste 0.033",
                "occluded positions still count for distance, so {amazing, smell} and "
                "{amazing, taste} are also minimal sufficient",
            ),
            annotations={
                "cancellation": "genuine: good smell and bad taste cancel",
                "{amazing, smell}": "artefact MSS",
                "{amazing, taste}": "artefact MSS",
            },
        ),
        FixtureCase(
            name="fig2_mS_xS1",
            model="fig2_mS",
            text="Tastes horrible, peculiar smell.",
            printed_prediction=-0.3,
            prediction=-0.3,
            printed_shapley=(
                ("smell", 0, -0.29, 2),
                ("Tastes", 0, 0.26, 2),
                ("horrible", 0, -0.14, 2),
                ("peculiar", 0, -0.13, 2),
            ),
            printed_mss=_refs(["peculiar", "smell"]),
            full_mss=_refs(["peculiar", "smell"]),
            annotations={"Tastes": "artefact weight", "horrible": "artefact weight"},
        ),
        FixtureCase(
            name="fig2_mS_xS2",
            model="fig2_mS",
            text="Tastes amazing, peculiar smell.",
            printed_prediction=-0.3,
            prediction=-0.3,
            printed_shapley=(
                ("peculiar", 0, -0.27, 2),
                ("smell", 0, -0.10, 2),
                ("amazing", 0, 0.05, 2),
                ("Tastes", 0, 0.02, 2),
            ),
            derived_shapley=(
                ("Tastes", 0, Fraction(-1, 3)),
                ("amazing", 0, Fraction(1, 6)),
                ("peculiar", 0, Fraction(-3, 20)),
                ("smell", 0, Fraction(1, 60)),
            ),
            printed_mss=_refs(["peculiar", "smell"]),
            full_mss=_refs(["peculiar", "smell"]),
            notes=(
                "printed Shapley table does not follow from the aspect rules under occlusion; "
                "exact enumeration gives Tastes -0.333, amazing 0.167, peculiar -0.15, "
                "smell 0.017",
            ),
        ),
        FixtureCase(
            name="fig2_mT_xT1",
            model="fig2_mT",
            text="Tastes good, refreshing.",
            printed_prediction=0.6,
            prediction=0.6,
            printed_shapley=(("Tastes", 0, 0.40, 2), ("good", 0, 0.10, 2), ("refreshing", 0, 0.10, 2)),
            printed_mss=_refs(["Tastes", "good"], ["Tastes", "refreshing"]),
            full_mss=_refs(["Tastes", "good"], ["Tastes", "refreshing"]),
            disjoint=_refs(["Tastes", "good"]),
            annotations={"multiple MSS": "genuine", "disjoint retrieval": "misses the second MSS"},
        ),
        FixtureCase(
            name="fig2_mT_xT2",
            model="fig2_mT",
            text="Tastes amazing. The smell is also amazing.",
            printed_prediction=0.6,
            prediction=1.0,
            printed_shapley=(
                ("Tastes", 0, 0.58, 2),
                ("amazing", 0, 0.42, 2),
                ("amazing", 1, 0.08, 2),
                ("smell", 0, -0.08, 2),
            ),
            printed_mss=_refs(["Tastes", ("amazing", 0)], ["Tastes", ("amazing", 1)]),
            full_mss=_refs(["Tastes", ("amazing", 0)], ["Tastes", ("amazing", 1)]),
            notes=(
                "printed prediction 0.6 is a typo: the rules give 1.0 and the printed "
                "Shapley weights sum to 1.0",
            ),
            annotations={"{Tastes, amazing#2}": "artefact MSS"},
        ),
        FixtureCase(
            name="min2_literature",
            model="min2",
            values=(1.0, 3.0),
            printed_prediction=1.0,
            prediction=1.0,
            printed_shapley=(("x1", 0, 0.5, None), ("x2", 0, 0.5, None)),
            full_mss=_refs(["x1", "x2"]),
        ),
        FixtureCase(
            name="max3_literature",
            model="max3",
            values=(5.0, 4.0, 0.0),
            printed_prediction=5.0,
            prediction=5.0,
            printed_shapley=(("x1", 0, 3.0, None), ("x2", 0, 2.0, None), ("x3", 0, 0.0, None)),
            full_mss=_refs(["x1"]),
        ),
    ]
}


def resolve(instance: Instance, ref: FeatureRef) -> int:
    surface, occurrence = ref
    hits = [f.position for f in instance if f.surface == surface]
    if occurrence >= len(hits):
        raise KeyError(f"{surface!r} occurrence {occurrence} not in instance")
    return hits[occurrence]


def ref_mask(instance: Instance, refs: Iterable[FeatureRef]) -> SubsetMask:
    return SubsetMask.from_positions(len(instance), [resolve(instance, r) for r in refs])


def printed_tolerance(decimals: int | None) -> float:
    """Allowed gap to a printed value: 0.005 up to two decimals, 0.001 beyond."""
    if decimals is None:
        return VALUE_EPS
    return 0.005 if decimals <= 2 else 0.001


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CaseResult:
    case: FixtureCase
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def run_case(case: FixtureCase, tolerance: float = DEFAULT_TOLERANCE) -> CaseResult:
    oracle = case.oracle()
    inst = oracle.instance
    checks = []

    pred = oracle.prediction
    checks.append(
        Check("prediction", abs(pred - case.prediction) <= VALUE_EPS, f"{pred:g} vs {case.prediction:g}")
    )

    shap = exact_shapley(oracle)
    if case.derived_shapley is not None:
        expected = {resolve(inst, (s, o)): (float(v), VALUE_EPS) for s, o, v in case.derived_shapley}
    else:
        expected = {
            resolve(inst, (s, o)): (v, printed_tolerance(d)) for s, o, v, d in case.printed_shapley
        }
    bad = []
    for i, w in enumerate(shap.weights):
        want, tol = expected.get(i, (0.0, VALUE_EPS))
        if abs(w - want) > tol + VALUE_EPS:
            bad.append(f"{inst[i].surface}@{i}: {w:.4f} vs {want:.4f}")
    checks.append(Check("shapley", not bad, "; ".join(bad)))

    mss = enumerate_mss(oracle, tolerance)
    got = set(mss.subsets)
    printed = {ref_mask(inst, g) for g in case.printed_mss}
    checks.append(Check("mss contains printed", printed <= got, f"missing {printed - got}" if not printed <= got else ""))
    full = [ref_mask(inst, g) for g in case.full_mss]
    checks.append(Check("mss complete set", list(mss.subsets) == full, f"{mss.surfaces()}"))

    if case.disjoint is not None:
        dis = disjoint_mss(oracle, tolerance)
        want = [ref_mask(inst, g) for g in case.disjoint]
        checks.append(Check("disjoint mss", dis == want, f"{[str(m) for m in dis]}"))
    return CaseResult(case, checks)
