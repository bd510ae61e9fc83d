"""Exact Shapley attributions and minimal sufficient subsets for subset-evaluation games."""

from .analysis import DivergenceReport, diagnose
from .core import (
    EXHAUSTIVE_CAP,
    CapacityError,
    ContractViolation,
    EmptyInstanceError,
    Feature,
    GameOracle,
    Instance,
    ModelEvaluationError,
    OcclusionPolicy,
    SubsetMask,
    UnsupportedOcclusion,
    evaluate_subset,
    relevant_features,
)
from .models import (
    AspectSentimentModel,
    ConstantModel,
    FunctionModel,
    ModelSpecError,
    ModelValidationError,
    NumericGame,
    PatternPriorityModel,
    predict_aspect,
    predict_numeric,
    predict_pattern,
    tokenize,
)
from .modelspec import builtin_model, load_model, parse_model, resolve_model
from .mss import MssExplanation, disjoint_mss, enumerate_mss, is_sufficient
from .shapley import AxiomReport, ShapleyExplanation, check_axioms, exact_shapley, sampled_shapley

__version__ = "0.1.0"
