"""Command-line front end.

    shapmss explain fig1_m "The movie was good, it was actually nice."
    shapmss explain max3 --values 5,4,0 --json
    shapmss fixtures [--case fig2_mT_xT2]
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .analysis import DivergenceReport, diagnose
from .core import CapacityError, ContractViolation, EmptyInstanceError, GameOracle, Instance
from .fixtures import CATALOG, run_case
from .models import ModelSpecError, NumericGame, tokenize
from .modelspec import resolve_model
from .mss import DEFAULT_TOLERANCE, MssExplanation, disjoint_mss, enumerate_mss
from .shapley import ShapleyExplanation, exact_shapley, sampled_shapley

ZERO = 1e-9


def _fmt(x: float, digits: int = 2) -> str:
    # + 0.0 turns -0.0 into 0.0
    return f"{round(x, digits) + 0.0:.{digits}f}"


def _set(instance: Instance, mask) -> str:
    return "{" + ", ".join(instance[i].surface for i in mask.positions()) + "}"


def render_text(
    model_name: str,
    shap: ShapleyExplanation,
    mss: MssExplanation,
    disjoint,
    report: DivergenceReport,
    show_all: bool = False,
) -> str:
    inst = shap.instance
    lines = [
        f"model: {model_name}",
        f"prediction: {_fmt(shap.prediction)}   baseline: {_fmt(shap.baseline)}",
        "",
    ]
    method = "exact" if shap.is_exact else f"sampled, {shap.permutations} permutations, seed {shap.seed}"
    lines.append(f"Shapley explanation ({method})")
    width = max(len(f.surface) for f in inst)
    rank = 0
    for i in shap.ranking():
        w = shap.weights[i]
        if not show_all and abs(w) <= ZERO:
            continue
        rank += 1
        lines.append(f"  {rank:>3}. {inst[i].surface:<{width}}  {_fmt(w):>6}   (position {i})")
    if rank == 0:
        lines.append("  (all weights are 0)")
    lines += ["", f"Minimal sufficient subsets (tolerance {mss.tolerance:g})"]
    lines += [f"  {_set(inst, m)}" for m in mss.subsets]
    lines += ["", "Disjoint retrieval"]
    lines += [f"  {_set(inst, m)}" for m in disjoint] or ["  (none)"]
    redundant = ", ".join(f"{inst[i].surface}@{i}" for i in report.redundant_features) or "none"
    yes = {True: "yes", False: "no"}
    lines += [
        "",
        f"Divergence (threshold {report.threshold:.3g})",
        f"  redundant features:  {redundant}",
        f"  cancellation:        {yes[report.cancellation_present]}"
        f" (positive {_fmt(report.positive_mass)}, negative {_fmt(report.negative_mass)})",
        f"  multiple MSS:        {yes[report.multiple_mss]} ({report.mss_count})",
        f"  disjoint incomplete: {yes[report.disjoint_incomplete]}"
        f" ({report.disjoint_count} of {report.mss_count})",
    ]
    return "\n".join(lines)


def _instance_for(model, text: str | None, values: str | None) -> Instance:
    if isinstance(model, NumericGame):
        if values is None:
            raise ContractViolation(f"numeric model {model.name} needs --values")
        if text is not None:
            raise ContractViolation("numeric models take --values, not text")
        try:
            nums = [float(v) for v in values.split(",")]
        except ValueError:
            raise ContractViolation(f"cannot read --values {values!r}") from None
        if len(nums) != model.arity:
            raise ContractViolation(f"{model.name} takes {model.arity} values, got {len(nums)}")
        return Instance.from_values(nums)
    if values is not None:
        raise ContractViolation("--values only applies to numeric models")
    if text is None:
        raise ContractViolation("text input is required for this model")
    return tokenize(text)


def cmd_explain(args) -> int:
    model = resolve_model(args.model)
    instance = _instance_for(model, args.text, args.values)
    oracle = GameOracle(model, instance)
    if args.sampled:
        shap = sampled_shapley(oracle, args.permutations, args.seed)
    else:
        shap = exact_shapley(oracle)
    mss = enumerate_mss(oracle, args.tolerance)
    disjoint = disjoint_mss(oracle, args.tolerance)
    report = diagnose(shap, mss, disjoint)
    if args.json:
        out = {
            "model": getattr(model, "name", args.model),
            "shapley": shap.to_dict(),
            "mss": mss.to_dict(disjoint),
            "report": report.to_dict(),
        }
        print(json.dumps(out, indent=2))
    else:
        print(render_text(getattr(model, "name", args.model), shap, mss, disjoint, report, args.all))
    return 0


def cmd_fixtures(args) -> int:
    if args.case:
        unknown = [c for c in args.case if c not in CATALOG]
        if unknown:
            print(
                f"error: unknown case {', '.join(unknown)}; choose from {', '.join(CATALOG)}",
                file=sys.stderr,
            )
            return 1
        cases = [CATALOG[c] for c in args.case]
    else:
        cases = list(CATALOG.values())

    columns = ["prediction", "shapley", "mss contains printed", "mss complete set", "disjoint mss"]
    header = f"{'case':<18}" + "".join(f"{c:>22}" for c in columns)
    print(header)
    all_ok = True
    failures = []
    for case in cases:
        result = run_case(case, args.tolerance)
        by_name = {c.name: c for c in result.checks}
        cells = []
        for col in columns:
            check = by_name.get(col)
            cells.append("-" if check is None else ("PASS" if check.passed else "FAIL"))
            if check is not None and not check.passed:
                failures.append(f"{case.name}: {col}: {check.detail}")
        print(f"{case.name:<18}" + "".join(f"{c:>22}" for c in cells))
        for note in case.notes:
            print(f"{'':<18}note: {note}")
        all_ok &= result.passed
    for line in failures:
        print(line)
    print("all cases pass" if all_ok else "some cases FAILED")
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shapmss",
        description="Exact Shapley and minimal-sufficient-subset explanations of rule models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("explain", help="explain one prediction")
    p.add_argument("model", help="built-in model name or path to a model description")
    p.add_argument("text", nargs="?", help="input text (text models)")
    p.add_argument("--values", help="comma-separated inputs (numeric models)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of tables")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--sampled", action="store_true", help="estimate Shapley values by permutation sampling")
    p.add_argument("--permutations", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--all", action="store_true", help="show zero-weight features too")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("fixtures", help="check the golden catalog")
    p.add_argument("--case", action="append", help="run only this case (repeatable)")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        ModelSpecError,
        ContractViolation,
        CapacityError,
        EmptyInstanceError,
        FileNotFoundError,
        KeyError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
