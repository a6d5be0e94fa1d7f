"""Command-line interface: compute, trace, verify, bench, drill, serve."""

from __future__ import annotations

import json
import sys
import time

import click

from . import drill as drill_mod
from .digits import DigitString, parse
from .errors import ParseError, PersistenceError, SessionNotFound, TrachtenbergError
from .opcount import count_schoolbook_ops, count_trace_ops, reports_as_csv, reports_as_table
from .oracle import exhaustive_verify, reference_multiply
from .rules import SUPPORTED_MULTIPLIERS, multiply_by_rule
from .trace import render_table, to_structured

_MULTIPLIER_CHOICE = click.Choice([str(m) for m in SUPPORTED_MULTIPLIERS])


def _parse_number(text: str) -> DigitString:
    try:
        return parse(text)
    except ParseError as exc:
        raise click.ClickException(str(exc)) from exc


def _parse_multiplier_list(text: str) -> tuple[int, ...]:
    if text.strip().lower() == "all":
        return SUPPORTED_MULTIPLIERS
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise click.UsageError(f"bad multiplier list: {text!r}")
    bad = [v for v in values if v not in SUPPORTED_MULTIPLIERS]
    if bad or not values:
        raise click.UsageError(
            f"unsupported multipliers {bad or text!r}; choose from "
            + ",".join(str(m) for m in SUPPORTED_MULTIPLIERS)
        )
    return values


@click.group()
def main():
    """Trachtenberg rapid multiplication: compute, explain, verify, practice."""


@main.command()
@click.argument("number")
@click.option("--by", "multiplier", type=_MULTIPLIER_CHOICE, required=True,
              help="Multiplier (3-9, 11, 12).")
def compute(number: str, multiplier: str):
    """Multiply NUMBER by the chosen multiplier and print the product."""
    trace = multiply_by_rule(_parse_number(number), int(multiplier))
    click.echo(str(trace.product))


@main.command()
@click.argument("number")
@click.option("--by", "multiplier", type=_MULTIPLIER_CHOICE, required=True)
@click.option("--format", "fmt", type=click.Choice(["table", "structured"]),
              default="table", show_default=True)
def trace(number: str, multiplier: str, fmt: str):
    """Print the worked table (or structured JSON) for NUMBER × multiplier."""
    t = multiply_by_rule(_parse_number(number), int(multiplier))
    if fmt == "table":
        click.echo(render_table(t), nl=False)
    else:
        click.echo(json.dumps(to_structured(t), indent=2))


@main.command()
@click.option("--max", "max_value", type=int, default=99999, show_default=True,
              help="Verify all multiplicands 0..MAX.")
@click.option("--multipliers", default="all", show_default=True,
              help="Comma-separated multipliers, or 'all'.")
@click.option("--workers", type=int, default=1, show_default=True)
def verify(max_value: int, multipliers: str, workers: int):
    """Check the rule engine against the schoolbook reference exhaustively."""
    ms = _parse_multiplier_list(multipliers)
    report = exhaustive_verify(max_value, ms, workers=workers)
    click.echo(
        f"cases run: {report.cases_run}\n"
        f"mismatches: {len(report.mismatches)}\n"
        f"invariant violations: {len(report.invariant_violations)}\n"
        f"duration: {report.duration:.2f}s"
    )
    for a, m, expected, actual in report.mismatches[:10]:
        click.echo(f"  MISMATCH {a} × {m}: expected {expected}, got {actual}")
    for a, m, problem in report.invariant_violations[:10]:
        click.echo(f"  INVARIANT {a} × {m}: {problem}")
    if not report.ok:
        sys.exit(1)


@main.command()
@click.argument("number", required=False)
@click.option("--length", type=int, default=None,
              help="Use a generated multiplicand of this many digits instead of NUMBER.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for --length generation.")
@click.option("--multipliers", default="all", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "csv"]),
              default="table", show_default=True)
@click.option("--time", "timeit", is_flag=True,
              help="Also measure wall-clock time per method (not part of the cost model).")
def bench(number: str | None, length: int | None, seed: int, multipliers: str,
          fmt: str, timeit: bool):
    """Count elementary operations for the rule engine vs the schoolbook baseline."""
    if (number is None) == (length is None):
        raise click.UsageError("give either NUMBER or --length")
    if number is not None:
        a = _parse_number(number)
    else:
        if length < 1:
            raise click.UsageError("--length must be >= 1")
        import random

        rng = random.Random(seed)
        a = DigitString(tuple([rng.randint(1, 9)] + [rng.randint(0, 9) for _ in range(length - 1)]))
    ms = _parse_multiplier_list(multipliers)

    reports = []
    for m in ms:
        reports.append(count_trace_ops(multiply_by_rule(a, m)))
        reports.append(count_schoolbook_ops(a, m))
    render = reports_as_table if fmt == "table" else reports_as_csv
    click.echo(render(reports), nl=False)

    if timeit:
        loops = max(1, 20000 // max(1, len(a)))
        for m in ms:
            t0 = time.perf_counter()
            for _ in range(loops):
                multiply_by_rule(a, m)
            t1 = time.perf_counter()
            for _ in range(loops):
                reference_multiply(a, m)
            t2 = time.perf_counter()
            click.echo(
                f"# wall-clock ×{m}: rule {1e6 * (t1 - t0) / loops:.2f}µs, "
                f"schoolbook {1e6 * (t2 - t1) / loops:.2f}µs over {loops} loops"
            )


def _prompt_int(label: str) -> int | None:
    while True:
        try:
            raw = input(label)
        except EOFError:
            return None
        try:
            return int(raw.strip())
        except ValueError:
            click.echo("  please enter an integer")


@main.command()
@click.option("--multipliers", default="all", show_default=True)
@click.option("--digits", default="2:3", show_default=True,
              help="Multiplicand length range MIN:MAX.")
@click.option("--count", "problem_count", type=int, default=3, show_default=True)
@click.option("--seed", type=int, default=None, help="Seed (random when omitted).")
@click.option("--mode", type=click.Choice(["guided", "answer"]), default="guided",
              show_default=True)
@click.option("--store", "store_dir", default=None,
              help="Session log directory (default $TRACHTENBERG_STORE or ./sessions).")
def drill(multipliers: str, digits: str, problem_count: int, seed: int | None,
          mode: str, store_dir: str | None):
    """Practice interactively, one position at a time."""
    ms = _parse_multiplier_list(multipliers)
    try:
        lo, _, hi = digits.partition(":")
        min_digits, max_digits = int(lo), int(hi or lo)
    except ValueError:
        raise click.UsageError(f"bad --digits range: {digits!r}")
    if seed is None:
        import secrets

        seed = secrets.randbits(64)
    try:
        config = drill_mod.DrillConfig(
            multipliers=ms,
            min_digits=min_digits,
            max_digits=max_digits,
            mode=drill_mod.DrillMode(mode),
            seed=seed,
            problem_count=problem_count,
        )
        session = drill_mod.new_session(config)
    except TrachtenbergError as exc:
        raise click.ClickException(str(exc)) from exc
    store = drill_mod.SessionStore(store_dir)
    store.sync(session)
    click.echo(f"session {session.session_id} (seed {seed}) — Ctrl-D to stop\n")

    current_problem = -1
    while True:
        challenge = drill_mod.next_challenge(session)
        store.sync(session)
        if isinstance(challenge, drill_mod.SessionFinished):
            break
        if challenge.problem_index != current_problem:
            current_problem = challenge.problem_index
            click.echo(
                f"problem {current_problem + 1}/{len(session.problems)}: "
                f"{challenge.multiplicand} × {challenge.multiplier}"
            )
        if challenge.asked is drill_mod.Asked.FINAL_PRODUCT:
            try:
                answer_text = input("  product? ")
            except EOFError:
                click.echo("\nstopped; session saved")
                return
            answer = {"product": answer_text.strip()}
        else:
            click.echo(
                f"  position {challenge.position_index} ({challenge.role}): "
                f"digit {challenge.digit}, neighbour {challenge.neighbour}, "
                f"carry in {challenge.carry_in}"
            )
            digit = _prompt_int("  result digit? ")
            if digit is None:
                click.echo("\nstopped; session saved")
                return
            carry = _prompt_int("  carry out? ")
            if carry is None:
                click.echo("\nstopped; session saved")
                return
            answer = {"digit": digit, "carry": carry}
        try:
            response = drill_mod.submit_response(session, challenge.challenge_id, answer)
        except TrachtenbergError as exc:
            click.echo(f"  rejected: {exc}")
            continue
        store.sync(session)
        if response.verdict == drill_mod.CORRECT:
            click.echo(f"  ✓ correct ({response.explanation})")
        else:
            click.echo(f"  ✗ expected {response.expected} — {response.explanation}")

    summary = drill_mod.session_summary(session)
    score = summary["score"]
    click.echo(f"\nfinished: {score['correct']}/{score['total']} correct")
    if "accuracy" in summary:
        click.echo(f"accuracy: {summary['accuracy']:.0%}")


@main.command()
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--store", "store_dir", default=None,
              help="Session log directory (default $TRACHTENBERG_STORE or ./sessions).")
@click.option("--allow-origin", "origins", multiple=True,
              help="CORS allowlist entry (repeatable; default: allow all).")
def serve(port: int, host: str, store_dir: str | None, origins: tuple[str, ...]):
    """Run the HTTP/JSON service the trainer UI talks to."""
    import uvicorn

    from .api import create_app

    app = create_app(store_dir=store_dir, cors_origins=list(origins) or None)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except OSError as exc:
        raise click.ClickException(f"could not start service: {exc}") from exc


if __name__ == "__main__":
    main()
