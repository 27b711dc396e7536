"""Quantitative combinatory logic: terms, normal-order reduction, exact
censuses, generating-function coefficients and Monte Carlo experiments."""

from __future__ import annotations

from .enumeration import CensusResult, census, count_terms, enumerate_terms
from .experiment import ExperimentConfig, ExperimentResult, export_result, run_experiment
from .reduce import FuelExhausted, NormalForm, StepCounter, normalize, reduction_length, step, trace
from .sample import RandomSource, random_term, remy_tree
from .term import SK, App, Basis, Leaf, PrimitiveCombinator, Term, parse, to_text

__all__ = [
    "SK",
    "App",
    "Basis",
    "CensusResult",
    "ExperimentConfig",
    "ExperimentResult",
    "FuelExhausted",
    "Leaf",
    "NormalForm",
    "PrimitiveCombinator",
    "RandomSource",
    "StepCounter",
    "Term",
    "census",
    "count_terms",
    "enumerate_terms",
    "export_result",
    "normalize",
    "parse",
    "random_term",
    "reduction_length",
    "remy_tree",
    "run_experiment",
    "step",
    "to_text",
    "trace",
]
