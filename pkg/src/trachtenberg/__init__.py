"""Trachtenberg rapid mental multiplication: engine, oracle, cost probe, trainer."""

from .digits import DigitString, parse, to_text
from .errors import (
    ChallengeError,
    ConfigError,
    DomainError,
    ParseError,
    PersistenceError,
    SessionNotFound,
    TrachtenbergError,
    ValidationError,
)
from .oracle import VerificationReport, exhaustive_verify, reference_multiply
from .opcount import OpCountReport, count_schoolbook_ops, count_trace_ops
from .rules import (
    RULES,
    SUPPORTED_MULTIPLIERS,
    PositionRole,
    RuleSpec,
    half_floor,
    multiply_by_rule,
    odd_bonus,
    position_raw_value,
)
from .trace import ComputationTrace, TraceStep, from_structured, render_table, to_structured

__version__ = "0.1.0"

__all__ = [
    "DigitString",
    "parse",
    "to_text",
    "TrachtenbergError",
    "ParseError",
    "DomainError",
    "ConfigError",
    "ChallengeError",
    "ValidationError",
    "SessionNotFound",
    "PersistenceError",
    "SUPPORTED_MULTIPLIERS",
    "PositionRole",
    "RuleSpec",
    "RULES",
    "half_floor",
    "odd_bonus",
    "position_raw_value",
    "multiply_by_rule",
    "TraceStep",
    "ComputationTrace",
    "render_table",
    "to_structured",
    "from_structured",
    "reference_multiply",
    "exhaustive_verify",
    "VerificationReport",
    "OpCountReport",
    "count_trace_ops",
    "count_schoolbook_ops",
    "__version__",
]
