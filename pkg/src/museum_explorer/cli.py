"""The ``explore`` command line: scripted runs, agent runs, and the server."""

from __future__ import annotations

import os
import sys

import click

from .dataspace import CatalogError, load_catalog
from .harness import POLICIES, ScriptError, emit_metrics, load_script, run_agent, run_script, write_run_outputs
from .params import ParamsError, load_params

VALIDATION_EXIT = 2


@click.group()
def cli() -> None:
    """Drive museum exploration sessions from the command line."""


@cli.command("run")
@click.option("--catalog", "catalog_path", required=True, type=click.Path(), help="Catalog JSON file.")
@click.option("--params", "params_path", type=click.Path(), default=None, help="Parameters JSON file.")
@click.option("--script", "script_path", required=True, type=click.Path(), help="Script JSON file.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--ticks", type=int, default=None, help="Run length; defaults to the last script tick + 1.")
@click.option("--out", "out_dir", type=click.Path(), default=None, help="Directory for metrics/trajectories/museum files.")
@click.option("--csv", "as_csv", is_flag=True, help="Print the summary as CSV instead of a table.")
@click.option("--strict", is_flag=True, help="Reject unknown keys in the catalog file.")
def run_cmd(catalog_path, params_path, script_path, seed, ticks, out_dir, as_csv, strict) -> None:
    """Play a recorded event script in logical time."""
    catalog = load_catalog(catalog_path, strict=strict)
    params = load_params(params_path)
    script = load_script(script_path)
    metrics, session = run_script(catalog, params, script, seed=seed, ticks=ticks)
    if out_dir:
        write_run_outputs(metrics, session, out_dir)
    click.echo(emit_metrics(metrics, "csv" if as_csv else "table"), nl=False)


@cli.command("agent")
@click.option("--policy", required=True, type=click.Choice(POLICIES))
@click.option("--catalog", "catalog_path", required=True, type=click.Path())
@click.option("--params", "params_path", type=click.Path(), default=None)
@click.option("--steps", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--target", default=None, help="Entity id the focused policy chases.")
@click.option("--out", "out_dir", type=click.Path(), default=None)
@click.option("--csv", "as_csv", is_flag=True)
@click.option("--strict", is_flag=True, help="Reject unknown keys in the catalog file.")
def agent_cmd(policy, catalog_path, params_path, steps, seed, target, out_dir, as_csv, strict) -> None:
    """Drive a session with a synthetic exploration policy."""
    catalog = load_catalog(catalog_path, strict=strict)
    params = load_params(params_path)
    try:
        metrics, session = run_agent(catalog, params, policy, steps, seed=seed, target=target)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    if out_dir:
        write_run_outputs(metrics, session, out_dir)
    click.echo(emit_metrics(metrics, "csv" if as_csv else "table"), nl=False)


@cli.command("serve")
@click.option("--catalog", "catalog_path", required=True, type=click.Path())
@click.option("--params", "params_path", type=click.Path(), default=None)
@click.option("--strict", is_flag=True, help="Reject unknown keys in the catalog file.")
@click.option("--logical", is_flag=True, help="New sessions default to the logical clock.")
@click.option("--ui", "ui_dir", type=click.Path(), default=None, help="Static directory to serve at / (built frontend).")
def serve_cmd(catalog_path, params_path, strict, logical, ui_dir) -> None:
    """Serve the exploration HTTP API (bind address from MUSEUM_EXPLORER_BIND)."""
    import uvicorn

    from .server import create_app

    catalog = load_catalog(catalog_path, strict=strict)
    params = load_params(params_path)
    app = create_app(catalog, params, default_logical=logical, ui_dir=ui_dir)
    bind = os.environ.get("MUSEUM_EXPLORER_BIND", "127.0.0.1:8000")
    host, _, port = bind.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or "8000"))


def main() -> None:
    try:
        cli.main(standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(VALIDATION_EXIT)
    except click.Abort:
        sys.exit(1)
    except (CatalogError, ParamsError, ScriptError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(VALIDATION_EXIT)


if __name__ == "__main__":
    main()
