"""Command-line entry point: run a session script and print its output records."""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from src.config.settings import Settings, override_settings
from src.errors import SessionError
from src.models.session import OutputRecord, RecordStatus
from src.parsers.session_parser import SessionParser
from src.session.executor import SessionExecutor, exit_status

# stdout carries only command output; diagnostics and logs go to stderr
console = Console(highlight=False, soft_wrap=True)
error_console = Console(stderr=True, highlight=False, soft_wrap=True)

STATUS_STYLES = {
    RecordStatus.OK: "green",
    RecordStatus.FAILED: "yellow",
    RecordStatus.ERROR: "red",
}


def setup_logging(log_level: str = "WARNING"):
    """
    Configure logging with rich handler.

    Args:
        log_level: Logging level
    """
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format="%(message)s",
        handlers=[
            RichHandler(
                rich_tracebacks=True,
                console=error_console,
                show_time=False,
                show_path=False,
            )
        ],
        force=True,
    )


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description="Closure operations on ideals of presented rings"
    )

    parser.add_argument(
        "session",
        type=str,
        help="Session script to execute ('-' reads standard input)",
    )

    parser.add_argument(
        "--format",
        type=str,
        choices=["text", "json"],
        default=None,
        help="Output format (default: text)",
    )

    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="Sampling seed for axiom and correspondence checks",
    )

    parser.add_argument(
        "--degree-bound",
        type=int,
        default=None,
        help="Degree bound for sampled numerators (default: 6)",
    )

    parser.add_argument(
        "--fail-fast",
        action="store_true",
        default=None,
        help="Stop at the first command that errors",
    )

    parser.add_argument(
        "--witnesses",
        type=str,
        default=None,
        help="Comma-separated regular elements added to every axiom check",
    )

    parser.add_argument(
        "--log-level",
        type=str,
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default: WARNING)",
    )

    return parser.parse_args(argv)


def settings_from_arguments(args: argparse.Namespace) -> Settings:
    """Settings with every given flag overriding its default."""
    witnesses = None
    if args.witnesses:
        witnesses = [w.strip() for w in args.witnesses.split(",") if w.strip()]
    return override_settings(
        output_format=args.format,
        seed=args.seed,
        degree_bound=args.degree_bound,
        fail_fast=args.fail_fast,
        witnesses=witnesses,
        log_level=args.log_level,
    )


def read_session(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def render_json(records: List[OutputRecord]):
    for record in records:
        sys.stdout.write(json.dumps(record.to_json_dict(), sort_keys=True) + "\n")


def _format_value(value: Any) -> str:
    """Markup-safe rendering of a payload value."""
    if isinstance(value, list):
        text = "(" + ", ".join(str(v) for v in value) + ")" if value else "(0)"
    elif value is None:
        text = "unknown"
    else:
        text = str(value)
    return escape(text)


def _render_verdicts(title: str, rows: List[Dict[str, Any]], key: str):
    table = Table(title=escape(title), show_header=True)
    table.add_column("Check", style="cyan")
    table.add_column("Status", justify="center")
    table.add_column("Samples", justify="right")
    for row in rows:
        color = {"passed": "green", "failed": "red"}.get(row["status"], "yellow")
        table.add_row(escape(row[key]), f"[{color}]{row['status']}[/{color}]", str(row["samples"]))
    console.print(table)


def render_text(records: List[OutputRecord]):
    """
    Display records for humans.

    Args:
        records: Output records in command order
    """
    for record in records:
        style = STATUS_STYLES[record.status]
        console.print(f"[bold]>[/bold] {escape(record.command)}")
        payload = record.payload
        if record.status == RecordStatus.ERROR:
            console.print(f"  [{style}]{payload['error']}: {escape(payload['message'])}[/{style}]")
        elif "verdicts" in payload:
            _render_verdicts(f"Axioms of {payload['closure']}", payload["verdicts"], "axiom")
        elif "checks" in payload:
            _render_verdicts(f"Correspondence of {payload['closure']}", payload["checks"], "name")
        elif "components" in payload and "provenance" in payload:
            for component in payload["components"]:
                line = (
                    f"  {_format_value(component['primary'])} "
                    f"[dim]prime[/dim] {_format_value(component['prime'])}"
                )
                if component["lifted"] != component["primary"]:
                    line += f" [dim]lifted[/dim] {_format_value(component['lifted'])}"
                console.print(line)
        else:
            if "classifications" in payload:
                for entry in payload["classifications"]:
                    detail = entry["associated_prime"] or entry["witness"]
                    console.print(
                        f"  [dim]component {entry['index']}[/dim] "
                        f"{_format_value(entry['primary'])}: {entry['verdict']}"
                        + (f" ({_format_value(detail)})" if detail else "")
                    )
            if "witnesses" in payload:
                console.print("  " + escape("[" + ", ".join(payload["witnesses"]) + "]"))
            for key in ("generators", "member", "regular", "relation", "ring", "closure"):
                if key in payload:
                    console.print(f"  {_format_value(payload[key])}")
            if "numerator" in payload:
                console.print(f"  {_format_value(payload['numerator'])}/({escape(payload['denominator'])})")
        for witness in record.witnesses or []:
            console.print(f"  [{style}]witness:[/{style}] {escape(str(witness.get('detail') or witness))}")
        if record.exactness and record.exactness != "exact":
            console.print(f"  [dim]exactness: {escape(record.exactness)}[/dim]")
    if records:
        console.print(f"[dim]seed {records[0].seed}[/dim]")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return the exit code."""
    args = parse_arguments(argv)
    settings = settings_from_arguments(args)
    setup_logging(settings.log_level)

    try:
        parser = SessionParser()
        try:
            session = parser.parse(read_session(args.session))
        except SessionError as e:
            error_console.print(f"[red]{args.session}:{e}[/red]")
            return 2
        logging.getLogger(__name__).info(f"parsed {parser.get_statistics()}")

        executor = SessionExecutor(settings)
        records = executor.execute(session)
        if settings.output_format == "json":
            render_json(records)
        else:
            render_text(records)
        logging.getLogger(__name__).info(f"executed {executor.get_statistics()}")
        return exit_status(records)

    except KeyboardInterrupt:
        error_console.print("\n[yellow]Interrupted by user[/yellow]")
        return 130
    except OSError as e:
        error_console.print(f"[red]Error: {e}[/red]")
        return 1


def main():
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
