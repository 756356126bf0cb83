"""Executable math misconceptions: generation, paired traces, and endpoint evaluation."""

__version__ = "0.1.0"

from .answers import canonicalize, from_json, render, to_json
from .errors import MalkitError
from .matching import DEFAULT_POLICY, MatchPolicy, answers_match
from .parsing import parse_answer
from .symbolic import SymbolicExpr
from .values import Boolean, Choice, FixedDecimal, Quantity, Rational, SciNotation

__all__ = [
    "__version__",
    "Boolean",
    "Choice",
    "DEFAULT_POLICY",
    "FixedDecimal",
    "MalkitError",
    "MatchPolicy",
    "Quantity",
    "Rational",
    "SciNotation",
    "SymbolicExpr",
    "answers_match",
    "canonicalize",
    "from_json",
    "parse_answer",
    "render",
    "to_json",
]
