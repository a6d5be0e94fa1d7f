"""Interactive practice sessions: problem generation, per-step quizzing,
scoring, and event-log persistence.

A session is driven by two calls: `next_challenge` hands out the next
question (idempotent until answered) and `submit_response` judges the
answer against the precomputed trace.  Everything that happens is recorded
as one structured event per line, so a session can be replayed from its
log exactly, including after a crash mid-session.

Problem generation must be reproducible across runs and platforms, so it
draws from a fixed, widely specified generator (MT19937, CPython's
random.Random) through in-module rejection sampling only.
"""

from __future__ import annotations

import json
import os
import random
import time
import uuid
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from .digits import DigitString, parse
from .errors import (
    ChallengeError,
    ConfigError,
    PersistenceError,
    SessionNotFound,
    ValidationError,
)
from .rules import SUPPORTED_MULTIPLIERS, multiply_by_rule
from .trace import ComputationTrace

__all__ = [
    "DrillMode",
    "Asked",
    "DrillConfig",
    "Problem",
    "StepChallenge",
    "StepResponse",
    "SessionFinished",
    "SESSION_FINISHED",
    "DrillSession",
    "SessionStore",
    "new_session",
    "next_challenge",
    "submit_response",
    "session_summary",
    "save_session",
    "load_session",
    "default_store_dir",
]

CORRECT = "correct"
INCORRECT = "incorrect"


class DrillMode(Enum):
    GUIDED_STEPS = "guided"
    ANSWER_ONLY = "answer"


class Asked(Enum):
    RAW_VALUE = "raw_value"
    RESULT_AND_CARRY = "result_digit_and_carry"
    FINAL_PRODUCT = "final_product"


@dataclass(frozen=True)
class DrillConfig:
    multipliers: tuple[int, ...]
    min_digits: int = 1
    max_digits: int = 3
    mode: DrillMode = DrillMode.GUIDED_STEPS
    seed: int = 0
    problem_count: int = 5
    ask_raw_value: bool = False  # also quiz the pre-carry formula value

    def validate(self) -> None:
        if not self.multipliers:
            raise ConfigError("multipliers must be non-empty")
        bad = [m for m in self.multipliers if m not in SUPPORTED_MULTIPLIERS]
        if bad:
            raise ConfigError(f"unsupported multipliers: {bad}")
        if not (1 <= self.min_digits <= self.max_digits <= 12):
            raise ConfigError(
                f"digit bounds must satisfy 1 <= min <= max <= 12, got "
                f"{self.min_digits}..{self.max_digits}"
            )
        if self.problem_count < 1:
            raise ConfigError("problem_count must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")

    def to_dict(self) -> dict[str, Any]:
        return {
            "multipliers": sorted(set(self.multipliers)),
            "min_digits": self.min_digits,
            "max_digits": self.max_digits,
            "mode": self.mode.value,
            "seed": self.seed,
            "problem_count": self.problem_count,
            "ask_raw_value": self.ask_raw_value,
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "DrillConfig":
        return cls(
            multipliers=tuple(doc["multipliers"]),
            min_digits=doc["min_digits"],
            max_digits=doc["max_digits"],
            mode=DrillMode(doc["mode"]),
            seed=doc["seed"],
            problem_count=doc["problem_count"],
            ask_raw_value=doc.get("ask_raw_value", False),
        )


@dataclass
class Problem:
    multiplicand: DigitString
    multiplier: int
    trace: ComputationTrace
    # (position_index or None, question kind) in the order they are asked
    plan: list[tuple[int | None, Asked]]


@dataclass(frozen=True)
class StepChallenge:
    challenge_id: str
    problem_index: int
    multiplicand: str
    multiplier: int
    position_index: int | None
    role: str | None
    digit: int | None
    neighbour: int | None
    carry_in: int | None  # always shown to the learner
    asked: Asked

    def to_dict(self) -> dict[str, Any]:
        doc = {
            "challenge_id": self.challenge_id,
            "problem_index": self.problem_index,
            "multiplicand": self.multiplicand,
            "multiplier": self.multiplier,
            "position_index": self.position_index,
            "role": self.role,
            "digit": self.digit,
            "neighbour": self.neighbour,
            "carry_in": self.carry_in,
            "asked": self.asked.value,
        }
        return doc


@dataclass(frozen=True)
class StepResponse:
    challenge_id: str
    problem_index: int
    answered: dict[str, Any]
    verdict: str
    expected: dict[str, Any]
    explanation: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "challenge_id": self.challenge_id,
            "problem_index": self.problem_index,
            "answered": self.answered,
            "verdict": self.verdict,
            "expected": self.expected,
            "explanation": self.explanation,
        }


class SessionFinished:
    """Sentinel returned by next_challenge once every question is answered."""

    def __repr__(self) -> str:  # pragma: no cover
        return "SessionFinished"


SESSION_FINISHED = SessionFinished()


@dataclass
class DrillSession:
    session_id: str
    config: DrillConfig
    created_at: float
    problems: list[Problem]
    problem_index: int = 0
    challenge_index: int = 0
    open_challenge: StepChallenge | None = None
    responses: list[StepResponse] = field(default_factory=list)
    correct_count: int = 0
    finished: bool = False
    last_event_at: float = 0.0
    events: list[dict[str, Any]] = field(default_factory=list)

    @property
    def score(self) -> tuple[int, int]:
        return self.correct_count, len(self.responses)


def _rand_below(rng: random.Random, n: int) -> int:
    """Uniform int in [0, n) by rejection on the raw generator bits.

    Implemented here (not via randrange) so the draw sequence is pinned by
    this module, independent of stdlib-internal changes.
    """
    if n <= 1:
        return 0
    k = (n - 1).bit_length()
    while True:
        r = rng.getrandbits(k)
        if r < n:
            return r


def _build_plan(config: DrillConfig, length: int) -> list[tuple[int | None, Asked]]:
    if config.mode is DrillMode.ANSWER_ONLY:
        return [(None, Asked.FINAL_PRODUCT)]
    plan: list[tuple[int | None, Asked]] = []
    for pos in range(length + 1):  # right to left, prepended zero last
        if config.ask_raw_value:
            plan.append((pos, Asked.RAW_VALUE))
        plan.append((pos, Asked.RESULT_AND_CARRY))
    return plan


def _generate_problems(config: DrillConfig) -> list[Problem]:
    rng = random.Random(config.seed)
    multipliers = tuple(sorted(set(config.multipliers)))
    problems = []
    for _ in range(config.problem_count):
        m = multipliers[_rand_below(rng, len(multipliers))]
        length = config.min_digits + _rand_below(rng, config.max_digits - config.min_digits + 1)
        digits = [1 + _rand_below(rng, 9)]
        digits.extend(_rand_below(rng, 10) for _ in range(length - 1))
        multiplicand = DigitString(tuple(digits))
        trace = multiply_by_rule(multiplicand, m)
        problems.append(Problem(multiplicand, m, trace, _build_plan(config, length)))
    return problems


def new_session(
    config: DrillConfig,
    session_id: str | None = None,
    created_at: float | None = None,
) -> DrillSession:
    """Create a session with all problems and traces precomputed.

    Identical configs (same seed included) produce identical problem and
    challenge sequences; the session id and timestamps are the only
    non-deterministic parts.
    """
    config.validate()
    session_id = session_id or uuid.uuid4().hex
    created_at = created_at if created_at is not None else time.time()
    session = DrillSession(
        session_id=session_id,
        config=config,
        created_at=created_at,
        problems=_generate_problems(config),
        last_event_at=created_at,
    )
    session.events.append(
        {
            "kind": "created",
            "session_id": session_id,
            "created_at": created_at,
            "config": config.to_dict(),
        }
    )
    return session


def _make_challenge(session: DrillSession) -> StepChallenge:
    problem = session.problems[session.problem_index]
    pos, asked = problem.plan[session.challenge_index]
    challenge_id = f"p{session.problem_index}.c{session.challenge_index}"
    if asked is Asked.FINAL_PRODUCT:
        return StepChallenge(
            challenge_id=challenge_id,
            problem_index=session.problem_index,
            multiplicand=str(problem.multiplicand),
            multiplier=problem.multiplier,
            position_index=None,
            role=None,
            digit=None,
            neighbour=None,
            carry_in=None,
            asked=asked,
        )
    step = problem.trace.steps[pos]
    return StepChallenge(
        challenge_id=challenge_id,
        problem_index=session.problem_index,
        multiplicand=str(problem.multiplicand),
        multiplier=problem.multiplier,
        position_index=pos,
        role=step.role.value,
        digit=step.digit,
        neighbour=step.neighbour,
        carry_in=step.carry_in,
        asked=asked,
    )


def next_challenge(session: DrillSession, at: float | None = None) -> StepChallenge | SessionFinished:
    """The currently open question, issuing it first if necessary.

    Repeated calls return the same challenge until it is answered; once the
    final response has been recorded the SESSION_FINISHED sentinel comes
    back instead.
    """
    if session.finished:
        return SESSION_FINISHED
    if session.open_challenge is not None:
        return session.open_challenge
    challenge = _make_challenge(session)
    session.open_challenge = challenge
    at = at if at is not None else time.time()
    session.last_event_at = at
    session.events.append({"kind": "challenge", "at": at, **challenge.to_dict()})
    return challenge


def _expected_for(problem: Problem, pos: int | None, asked: Asked) -> tuple[dict[str, Any], str]:
    if asked is Asked.FINAL_PRODUCT:
        product = str(problem.trace.product)
        return {"product": product}, f"{problem.multiplicand}×{problem.multiplier}={product}"
    step = problem.trace.steps[pos]
    if asked is Asked.RAW_VALUE:
        return {"raw": step.raw_value}, step.formula
    return {"digit": step.result_digit, "carry": step.carry_out}, step.formula


def _check_answer_shape(asked: Asked, answer: dict[str, Any]) -> dict[str, Any]:
    if not isinstance(answer, dict):
        raise ValidationError("answer must be an object")

    def _int_field(name: str, lo: int, hi: int) -> int:
        value = answer.get(name)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"answer field {name!r} must be an integer")
        if not lo <= value <= hi:
            raise ValidationError(f"answer field {name!r} must be in {lo}..{hi}")
        return value

    if asked is Asked.RESULT_AND_CARRY:
        return {"digit": _int_field("digit", 0, 9), "carry": _int_field("carry", 0, 2)}
    if asked is Asked.RAW_VALUE:
        return {"raw": _int_field("raw", -2, 27)}
    product = answer.get("product")
    if not isinstance(product, str):
        raise ValidationError("answer field 'product' must be a string of digits")
    try:
        return {"product": str(parse(product))}
    except Exception as exc:
        raise ValidationError(f"answer field 'product' is not a number: {exc}") from exc


def submit_response(
    session: DrillSession,
    challenge_id: str,
    answer: dict[str, Any],
    at: float | None = None,
) -> StepResponse:
    """Judge an answer to the currently open challenge and advance the cursor."""
    if session.open_challenge is None:
        raise ChallengeError(
            f"no open challenge (already answered or never issued): {challenge_id!r}"
        )
    if challenge_id != session.open_challenge.challenge_id:
        raise ChallengeError(
            f"stale challenge id {challenge_id!r}; open is "
            f"{session.open_challenge.challenge_id!r}"
        )
    problem = session.problems[session.problem_index]
    pos, asked = problem.plan[session.challenge_index]
    answered = _check_answer_shape(asked, answer)
    expected, explanation = _expected_for(problem, pos, asked)
    verdict = CORRECT if answered == expected else INCORRECT

    response = StepResponse(
        challenge_id=challenge_id,
        problem_index=session.problem_index,
        answered=answered,
        verdict=verdict,
        expected=expected,
        explanation=explanation,
    )
    session.responses.append(response)
    if verdict == CORRECT:
        session.correct_count += 1
    session.open_challenge = None
    session.challenge_index += 1
    if session.challenge_index >= len(problem.plan):
        session.challenge_index = 0
        session.problem_index += 1

    at = at if at is not None else time.time()
    session.last_event_at = at
    session.events.append({"kind": "response", "at": at, **response.to_dict()})
    if session.problem_index >= len(session.problems):
        session.finished = True
        session.events.append({"kind": "finished", "at": at})
    return response


def session_summary(session: DrillSession) -> dict[str, Any]:
    """Score, per-multiplier accuracy, elapsed time and the finished flag.

    With no responses yet there is no accuracy to report, so the key is
    absent rather than null-ish.
    """
    correct, total = session.score
    summary: dict[str, Any] = {
        "session_id": session.session_id,
        "score": {"correct": correct, "total": total},
        "elapsed_seconds": round(session.last_event_at - session.created_at, 6),
        "finished": session.finished,
    }
    if total:
        summary["accuracy"] = correct / total
        per: dict[int, list[int]] = {}
        for response in session.responses:
            m = session.problems[response.problem_index].multiplier
            bucket = per.setdefault(m, [0, 0])
            bucket[1] += 1
            bucket[0] += int(response.verdict == CORRECT)
        summary["per_multiplier"] = {
            str(m): {"correct": c, "total": t, "accuracy": c / t}
            for m, (c, t) in sorted(per.items())
        }
    return summary


# --- persistence -----------------------------------------------------------

def default_store_dir() -> Path:
    return Path(os.environ.get("TRACHTENBERG_STORE", "./sessions"))


def _session_path(store_dir: Path | str, session_id: str) -> Path:
    if not session_id or any(c in session_id for c in "/\\") or session_id.startswith("."):
        raise SessionNotFound(session_id)
    return Path(store_dir) / f"{session_id}.log"


def save_session(session: DrillSession, store_dir: Path | str | None = None) -> Path:
    """Write the full event log, one JSON record per line."""
    store = Path(store_dir) if store_dir is not None else default_store_dir()
    store.mkdir(parents=True, exist_ok=True)
    path = _session_path(store, session.session_id)
    with open(path, "w", encoding="utf-8") as fh:
        for event in session.events:
            fh.write(json.dumps(event, separators=(",", ":")) + "\n")
    return path


def load_session(session_id: str, store_dir: Path | str | None = None) -> DrillSession:
    """Reconstruct a session by replaying its event log.

    The created record regenerates the problems from the stored config;
    challenge and response records are re-driven through the engine, so the
    loaded session's cursor, verdicts and score match the original exactly.
    A truncated log simply yields the session as of its last intact event.
    """
    store = Path(store_dir) if store_dir is not None else default_store_dir()
    path = _session_path(store, session_id)
    if not path.exists():
        raise SessionNotFound(session_id)

    session: DrillSession | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                event = json.loads(line)
            except json.JSONDecodeError as exc:
                raise PersistenceError(
                    f"corrupt session log line {line_number}: {exc}", line_number
                ) from exc
            try:
                kind = event["kind"]
                if kind == "created":
                    if session is not None:
                        raise PersistenceError(
                            f"duplicate created record at line {line_number}", line_number
                        )
                    session = new_session(
                        DrillConfig.from_dict(event["config"]),
                        session_id=event["session_id"],
                        created_at=event["created_at"],
                    )
                elif session is None:
                    raise PersistenceError(
                        f"log does not start with a created record (line {line_number})",
                        line_number,
                    )
                elif kind == "challenge":
                    issued = next_challenge(session, at=event["at"])
                    if isinstance(issued, SessionFinished) or issued.challenge_id != event["challenge_id"]:
                        raise PersistenceError(
                            f"challenge record out of order at line {line_number}",
                            line_number,
                        )
                elif kind == "response":
                    submit_response(
                        session, event["challenge_id"], event["answered"], at=event["at"]
                    )
                elif kind == "finished":
                    if not session.finished:
                        raise PersistenceError(
                            f"finished record before the last response (line {line_number})",
                            line_number,
                        )
                else:
                    raise PersistenceError(
                        f"unknown record kind {kind!r} at line {line_number}", line_number
                    )
            except PersistenceError:
                raise
            except (KeyError, TypeError, ValueError, ChallengeError, ValidationError) as exc:
                raise PersistenceError(
                    f"corrupt session log line {line_number}: {exc}", line_number
                ) from exc
    if session is None:
        raise PersistenceError("empty session log", None)
    return session


class SessionStore:
    """Directory of session logs with incremental (append-only) flushing.

    The HTTP service owns live sessions through this store: every mutating
    call is followed by sync(), which appends only the not-yet-written
    events, so a crash loses at most the event in flight.
    """

    def __init__(self, directory: Path | str | None = None):
        self.directory = Path(directory) if directory is not None else default_store_dir()
        self._flushed: dict[str, int] = {}

    def sync(self, session: DrillSession) -> None:
        done = self._flushed.get(session.session_id, 0)
        pending = session.events[done:]
        if not pending:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = _session_path(self.directory, session.session_id)
        with open(path, "a", encoding="utf-8") as fh:
            for event in pending:
                fh.write(json.dumps(event, separators=(",", ":")) + "\n")
        self._flushed[session.session_id] = done + len(pending)

    def load(self, session_id: str) -> DrillSession:
        session = load_session(session_id, self.directory)
        self._flushed[session.session_id] = len(session.events)
        return session
