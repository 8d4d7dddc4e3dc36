"""Command line front end: box driver, batch experiments, and the server.

The box and experiment commands call the core package directly, so a
seed pins down the output byte for byte; `serve` starts the HTTP service
the browser panel talks to.
"""

from __future__ import annotations

import json
import sys

import click

from .experiments import (
    ChshSettings,
    chsh_sampled,
    chsh_value,
    distinguish,
    lhv_chsh_max,
    parse_obs,
    parse_prep,
    run_trials,
    singlet,
)
from .fsm import new_box, render, step, transcript_to_jsonl
from .messages import resolve_catalog
from .quantum import DomainError

_EVENT_GRAMMAR = {
    ("prepare",): "prepare",
    ("select", "h"): "select_h",
    ("select", "s"): "select_s",
    ("measure",): "measure",
    ("lid", "open"): "lid_open",
    ("lid", "close"): "lid_close",
}


def parse_event_line(line: str) -> str | None:
    """One script/interactive line -> event id, "quit", or None for blank."""
    tokens = tuple(line.strip().lower().split())
    if not tokens or tokens[0].startswith("#"):
        return None
    if tokens == ("quit",):
        return "quit"
    event = _EVENT_GRAMMAR.get(tokens)
    if event is None:
        raise ValueError(f"unparseable event {line.strip()!r}")
    return event


def _format_panel(view) -> str:
    buttons = " ".join(f"{name}={'on' if on else 'off'}"
                       for name, on in view.buttons.items())
    return (f"display[{view.display_id}]: {view.display_text}\n"
            f"led: {view.led} | lid: {view.lid} | {buttons}")


@click.group()
def main():
    """Simulated boxed-cat experiment: quantum core, box panel, service."""


@main.command("box")
@click.option("--seed", type=int, default=0, show_default=True,
              help="RNG seed for the box.")
@click.option("--script", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Replay events from a file and print the "
              "transcript as JSON lines.")
@click.option("--catalog", type=click.Path(exists=True, dir_okay=False),
              default=None, envvar="CATBOX_CATALOG",
              help="Message catalog file (KEY=value per line).")
def box_cmd(seed: int, script: str | None, catalog: str | None):
    """Drive one box, interactively or from a script.

    Script grammar, one event per line: prepare | select h | select s |
    measure | lid open | lid close | quit. Blank lines and # comments are
    skipped. Interactive mode prints the panel after every event.
    """
    box = new_box(seed, resolve_catalog(catalog))
    if script is not None:
        events = []
        with open(script, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                try:
                    event = parse_event_line(line)
                except ValueError as exc:
                    click.echo(f"{script}:{lineno}: {exc}", err=True)
                    sys.exit(2)
                if event == "quit":
                    break
                if event is not None:
                    events.append(event)
        for event in events:
            box = step(box, event)
        click.echo(transcript_to_jsonl(box.log), nl=False)
        return
    click.echo(_format_panel(render(box)))
    for line in sys.stdin:
        try:
            event = parse_event_line(line)
        except ValueError as exc:
            click.echo(f"? {exc}")
            continue
        if event == "quit":
            break
        if event is None:
            continue
        box = step(box, event)
        click.echo(_format_panel(render(box)))


@main.command("trials")
@click.option("--prep", required=True,
              help="pure | pure:PHASE | mixed | dephased:STRENGTH")
@click.option("--obs", required=True, help="h | s | rotated:THETA")
@click.option("--n", type=int, required=True, help="Number of trials.")
@click.option("--seed", type=int, default=0, show_default=True)
def trials_cmd(prep: str, obs: str, n: int, seed: int):
    """Empirical outcome frequencies of n prepare-and-measure rounds."""
    try:
        table = run_trials(parse_prep(prep), parse_obs(obs), n, seed)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    click.echo(json.dumps(table.to_json()))


@main.command("distinguish")
@click.option("--prep", required=True, help="pure | mixed")
@click.option("--n", type=int, required=True, help="Number of trials.")
@click.option("--seed", type=int, default=0, show_default=True)
def distinguish_cmd(prep: str, n: int, seed: int):
    """Pure-vs-mixed verdict from n plus/minus measurements."""
    try:
        verdict = distinguish(parse_prep(prep), n, seed)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    click.echo(json.dumps(verdict.to_json()))


@main.command("bell")
@click.option("--angles", required=True,
              help="Four comma-separated angles: a,a_prime,b,b_prime.")
@click.option("--n", type=int, default=None,
              help="If given, also sample n joint measurements per setting.")
@click.option("--seed", type=int, default=0, show_default=True)
def bell_cmd(angles: str, n: int | None, seed: int):
    """CHSH report: analytic singlet value, LHV bound, optional sampling."""
    parts = angles.split(",")
    if len(parts) != 4:
        raise click.UsageError("--angles needs exactly four comma-separated values")
    try:
        a, a_prime, b, b_prime = (float(p) for p in parts)
        settings = ChshSettings(a, a_prime, b, b_prime)
    except (ValueError, DomainError) as exc:
        raise click.UsageError(f"bad angles: {exc}")
    report = {
        "settings": {"a": a, "a_prime": a_prime, "b": b, "b_prime": b_prime},
        "analytic_value": chsh_value(singlet(), settings),
        "lhv_bound": lhv_chsh_max(),
        "sampled": None,
    }
    if n is not None:
        try:
            report["sampled"] = chsh_sampled(settings, n, seed).to_json()
        except DomainError as exc:
            raise click.UsageError(str(exc))
    click.echo(json.dumps(report))


@main.command("serve")
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--seed", type=int, default=None,
              help="Fixed seed for every box; omit for per-box random seeds.")
@click.option("--catalog", type=click.Path(exists=True, dir_okay=False),
              default=None, envvar="CATBOX_CATALOG")
@click.option("--transcript-dir", type=click.Path(file_okay=False), default=None,
              help="Persist box transcripts as JSON lines under this directory.")
def serve_cmd(port: int, host: str, seed: int | None, catalog: str | None,
              transcript_dir: str | None):
    """Run the HTTP service for the browser control panel."""
    import uvicorn

    from .service import create_app

    app = create_app(fixed_seed=seed, catalog=resolve_catalog(catalog),
                     transcript_dir=transcript_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
