"""Bundled bases, grammars and reference data."""

from __future__ import annotations

import json
from importlib.resources import files
from pathlib import Path

from .series import GrammarData
from .term import Basis

__all__ = [
    "BUILTIN_BASES",
    "data_path",
    "load_basis",
    "r1_grammar",
    "reference_densities",
    "large_run_coordinates",
]

BUILTIN_BASES = ("sk", "bckw")


def data_path(name: str) -> Path:
    return Path(str(files("clquant").joinpath("data", name)))


def load_basis(spec: str) -> Basis:
    """A builtin basis name (``sk``, ``bckw``), a JSON file or a JSON string."""
    if spec.lower() in BUILTIN_BASES:
        return Basis.from_json(data_path(f"{spec.lower()}.json"))
    return Basis.from_json(spec)


def r1_grammar(k_head_only: bool = False) -> GrammarData:
    """Productions for SK-terms reducing in exactly one step.

    With ``k_head_only`` the two productions whose redex has an ``S S``
    head are left out.
    """
    name = "r1_sk_k_head.json" if k_head_only else "r1_sk.json"
    return GrammarData.from_json(data_path(name))


def reference_densities() -> dict:
    """The constant ``C~_1`` and the densities of ``R_1 .. R_7`` over SK."""
    return json.loads(data_path("densities_sk.json").read_text())


def large_run_coordinates() -> str:
    """Histogram of G(1200, 5*10^7, 1000) as a coordinate list."""
    return data_path("g_1200_50000000_1000.txt").read_text()
