"""Command-line front door: serve, offline checks, and log analytics."""

from __future__ import annotations

import json
import sys

import click

from . import analytics
from .errors import DavidError, ParseError, SchemaError, ValidationError
from .models import Alphabet
from .parsing import parse_payload
from .service import STATUS_CORRECT, Problem, evaluate_submission

EXIT_CORRECT = 0
EXIT_INCORRECT = 1
EXIT_SYNTAX = 2
EXIT_IO = 3


@click.group()
def main():
    """Homework feedback tools: equivalence checks with witness strings."""


@main.command()
@click.option("--addr", envvar="DAVID_ADDR", default="127.0.0.1:8080",
              show_default=True, help="bind address")
@click.option("--data-dir", envvar="DAVID_DATA_DIR", default="./david-data",
              show_default=True)
@click.option("--token", envvar="DAVID_INSTRUCTOR_TOKEN", required=True,
              help="instructor bearer token")
def serve(addr, data_dir, token):
    """Run the feedback service."""
    import uvicorn

    from .service import create_app

    host, _, port = addr.partition(":")
    app = create_app(data_dir, token)
    uvicorn.run(app, host=host, port=int(port or 8080))


def _infer_alphabet(model_type: str, path: str, text: str) -> Alphabet:
    if model_type in ("dfa", "nfa", "pda"):
        data = json.loads(text)
        return Alphabet(tuple(data["alphabet"]))
    # regex/cfg plain text: alphabet = symbols used, in first-appearance order
    symbols = []
    for c in text:
        if c.isspace() or c in "_#+*()|->":
            continue
        if not c.isupper() and c not in symbols:
            symbols.append(c)
    return Alphabet(tuple(symbols))


@main.command()
@click.option("--type", "model_type", required=True,
              type=click.Choice(["dfa", "nfa", "regex", "cfg", "pda"]))
@click.option("--bound", "bound_k", type=int, default=None,
              help="length bound for cfg/pda checks (default 15)")
@click.option("--alphabet", "alphabet_opt", default=None,
              help="comma-separated symbols; inferred from the files if omitted")
@click.argument("reference_path")
@click.argument("submission_path")
def check(model_type, bound_k, alphabet_opt, reference_path, submission_path):
    """Check a submission file against a reference file.

    Exit code 0 = correct/agrees, 1 = incorrect, 2 = syntax or validation
    error, 3 = I/O error. The verdict JSON goes to stdout.
    """
    try:
        with open(reference_path, encoding="utf-8") as f:
            reference_text = f.read()
        with open(submission_path, encoding="utf-8") as f:
            submission_text = f.read()
    except OSError as e:
        click.echo(str(e), err=True)
        sys.exit(EXIT_IO)

    try:
        if alphabet_opt:
            alphabet = Alphabet(tuple(alphabet_opt.split(",")))
        else:
            alphabet = _infer_alphabet(model_type, reference_path, reference_text)
        parse_payload(model_type, alphabet, reference_text)
    except (ParseError, SchemaError, ValidationError, ValueError) as e:
        click.echo(json.dumps({"status": "syntaxError", "message": str(e)},
                              sort_keys=True))
        sys.exit(EXIT_SYNTAX)

    problem = Problem(
        id="cli", model_type=model_type, alphabet=alphabet,
        prompt="", reference_payload=reference_text, bound_k=bound_k,
        created_at="")
    verdict = evaluate_submission(problem, submission_text)
    click.echo(json.dumps(verdict, sort_keys=True))
    if verdict["status"] == STATUS_CORRECT:
        sys.exit(EXIT_CORRECT)
    if verdict["status"] == "incorrect":
        sys.exit(EXIT_INCORRECT)
    sys.exit(EXIT_SYNTAX)


@main.command()
@click.argument("log_path")
@click.option("--csv", "csv_out", type=click.Path(), default=None,
              help="also write the stats as CSV")
def stats(log_path, csv_out):
    """Persistence statistics per problem from a submissions log."""
    try:
        with open(log_path, encoding="utf-8") as f:
            records = analytics.read_log(
                f, on_error=lambda e: click.echo(str(e), err=True))
    except OSError as e:
        click.echo(str(e), err=True)
        sys.exit(EXIT_IO)
    result = analytics.persistence_stats(records)
    click.echo(json.dumps([s.to_dict() for s in result], indent=2))
    if csv_out:
        with open(csv_out, "w", encoding="utf-8") as f:
            f.write(analytics.stats_csv(result))


@main.command()
@click.argument("log_path")
@click.option("--problem", "problem_id", required=True)
def trajectories(log_path, problem_id):
    """Export one problem's submission trajectories as CSV on stdout."""
    try:
        with open(log_path, encoding="utf-8") as f:
            records = analytics.read_log(
                f, on_error=lambda e: click.echo(str(e), err=True))
    except OSError as e:
        click.echo(str(e), err=True)
        sys.exit(EXIT_IO)
    try:
        rows = analytics.export_trajectories(records, problem_id)
    except DavidError as e:
        click.echo(str(e), err=True)
        sys.exit(EXIT_IO)
    analytics.write_trajectories_csv(rows, sys.stdout)


if __name__ == "__main__":
    main()
