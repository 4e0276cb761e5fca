"""Parallel duel-and-sweep pattern matching under substring-consistent
equivalence relations, run on a deterministic Priority-CRCW PRAM model."""

from duelsweep.encoding import (
    INFINITY, ZERO, CartesianScheme, EncodedString, ExactScheme, Literal,
    ParameterizedScheme, Scheme, get_scheme,
)
from duelsweep.pram import Machine, Monitor, StepLedger
from duelsweep.search import SearchResult, match_all, match_piece
from duelsweep.witness import WitnessTable, preprocess

__all__ = [
    "INFINITY", "ZERO", "Literal", "EncodedString", "Scheme", "ExactScheme",
    "ParameterizedScheme", "CartesianScheme", "get_scheme", "Machine", "Monitor",
    "StepLedger", "WitnessTable", "preprocess", "SearchResult", "match_all", "match_piece",
]
__version__ = "0.1.0"
