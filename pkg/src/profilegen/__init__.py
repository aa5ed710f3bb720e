"""Exact symptom-profile enumeration from profile generators, and MPCS between disorders."""

from importlib.resources import files

from .engine import (
    Profile,
    ProfileMatrix,
    SymbolTable,
    build_matrix,
    count_profiles,
    enumerate_profiles,
    export_matrix,
    intern,
    max_profile,
)
from .errors import ProfileGenError
from .generators import G0, G1, G2, G3, G4, DisorderSpec, count_generator, eval_generator
from .reducer import ReductionReport, conditional_pair, mpcs_max_conditional
from .similarity import MpcsResult, cosine, mpcs
from .spec_io import load, parse, parse_generator, serialize

__all__ = [
    "G0", "G1", "G2", "G3", "G4", "DisorderSpec", "count_generator", "eval_generator",
    "SymbolTable", "Profile", "ProfileMatrix", "intern", "build_matrix", "count_profiles",
    "enumerate_profiles", "export_matrix", "max_profile",
    "MpcsResult", "cosine", "mpcs",
    "ReductionReport", "conditional_pair", "mpcs_max_conditional",
    "load", "parse", "parse_generator", "serialize",
    "ProfileGenError", "corpus_path",
]


def corpus_path(name: str = ""):
    """Path to the bundled disorder corpus, or to one file in it."""
    root = files(__name__) / "corpus"
    return root / name if name else root
