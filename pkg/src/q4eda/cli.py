"""Command-line front door.

Every subcommand loads the same JSON config the service uses (--config
flag, else the Q4EDA_CONFIG environment variable). Output on stdout is
machine-parseable: single-line query text or JSON. Exit codes: 0 ok,
1 runtime or data problem, 2 usage.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .data import Selection
from .engine import Engine, EngineConfig, SelectionError, load_config
from .search import BackendError
from .stability import report_to_json, report_to_table


def _load(ctx: click.Context) -> tuple[Engine, EngineConfig]:
    path = ctx.obj.get("config") or os.environ.get("Q4EDA_CONFIG")
    if not path:
        raise click.UsageError("no configuration: pass --config or set Q4EDA_CONFIG")
    try:
        config = load_config(path)
        return Engine.from_config(config), config
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc


def _selection(ctx, dataset: str, key: str, y_from: int, y_to: int,
               profile: str | None, engine: Engine) -> Selection:
    if y_from > y_to:
        raise click.UsageError("--from must not exceed --to")
    return Selection(
        dataset_names=(dataset.strip().lower(),),
        keys=(key.strip().lower(),),
        year_ranges=((y_from, y_to),),
        weight_profile=profile or engine.converter.profile,
    )


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON config file; defaults to $Q4EDA_CONFIG.")
@click.pass_context
def main(ctx, config_path):
    """Compile time-series selections into search queries and run them."""
    ctx.obj = {"config": config_path}


_selection_options = [
    click.option("--dataset", required=True, help="Dataset name."),
    click.option("--key", required=True, help="Series key (e.g. a country)."),
    click.option("--from", "y_from", type=int, required=True, help="First year."),
    click.option("--to", "y_to", type=int, required=True, help="Last year."),
    click.option("--profile", type=click.Choice(["uniform", "gaussian"]),
                 default=None, help="Year weight profile (default from config)."),
]


def selection_options(command):
    for option in reversed(_selection_options):
        command = option(command)
    return command


@main.command()
@selection_options
@click.option("--format", "fmt", type=click.Choice(["inner", "es"]), default="es",
              help="Output dialect.")
@click.pass_context
def convert(ctx, dataset, key, y_from, y_to, profile, fmt):
    """Print the compiled query for one selection."""
    engine, _ = _load(ctx)
    selection = _selection(ctx, dataset, key, y_from, y_to, profile, engine)
    try:
        outcome = engine.convert(selection)
    except SelectionError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(outcome.ir_text if fmt == "inner" else outcome.es_text)


@main.command()
@selection_options
@click.option("--top-k", type=int, default=None, help="Result list size.")
@click.option("--backend", type=click.Choice(["local", "es"]), default=None)
@click.pass_context
def query(ctx, dataset, key, y_from, y_to, profile, top_k, backend):
    """Run one selection and print document hits as JSON lines."""
    engine, _ = _load(ctx)
    selection = _selection(ctx, dataset, key, y_from, y_to, profile, engine)
    try:
        outcome = engine.convert(selection)
        hits = engine.execute(outcome.expr, top_k, backend)
    except (SelectionError, BackendError) as exc:
        raise click.ClickException(str(exc)) from exc
    for hit in hits:
        click.echo(json.dumps({"doc_id": hit.doc_id, "score": hit.score,
                               "snippet": hit.snippet}))


@main.command()
@selection_options
@click.option("--mode", type=click.Choice(["direct", "indirect", "nlp"]),
              default="direct", help="Text suggestion mode.")
@click.option("--method", type=click.Choice(["pearson", "dtw"]),
              default="pearson", help="Pattern suggestion method.")
@click.option("--top-k", type=int, default=None, help="Documents to suggest from.")
@click.pass_context
def suggest(ctx, dataset, key, y_from, y_to, profile, mode, method, top_k):
    """Print suggestion rankings for one selection as JSON."""
    engine, _ = _load(ctx)
    selection = _selection(ctx, dataset, key, y_from, y_to, profile, engine)
    try:
        outcome = engine.query(selection, top_k=top_k, text_mode=mode,
                               pattern_method=method)
    except (SelectionError, BackendError) as exc:
        raise click.ClickException(str(exc)) from exc
    pattern_block = None
    if outcome.pattern_suggestions is not None:
        keys_ranking, datasets_ranking = outcome.pattern_suggestions
        pattern_block = {"keys": list(keys_ranking.entries),
                         "datasets": list(datasets_ranking.entries)}
    click.echo(json.dumps({
        "pattern_suggestions": pattern_block,
        "documents": [
            {"doc_id": hit.doc_id,
             "datasets": list(datasets_ranking.entries),
             "keys": list(keys_ranking.entries)}
            for hit, (datasets_ranking, keys_ranking)
            in zip(outcome.documents, outcome.per_document_suggestions)],
    }))


@main.command()
@click.option("--top-k", type=int, default=10, help="Results per query.")
@click.option("--top-n", type=int, default=6, help="Patterns per series.")
@click.option("--window", type=int, default=3, help="Perturbation window (odd).")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Also write the JSON report here.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]),
              default="json", help="Stdout format.")
@click.pass_context
def stability(ctx, top_k, top_n, window, out_path, fmt):
    """Evaluate answer stability over the whole collection."""
    if window < 1 or window % 2 == 0:
        raise click.UsageError("--window must be an odd positive integer")
    engine, _ = _load(ctx)
    try:
        report = engine.stability_report(top_k=top_k, top_n=top_n, window=window)
    except BackendError as exc:
        raise click.ClickException(str(exc)) from exc
    payload = report_to_json(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    click.echo(report_to_table(report) if fmt == "table"
               else json.dumps(payload))


@main.command()
@click.pass_context
def index(ctx):
    """Build the local index and print corpus statistics."""
    engine, _ = _load(ctx)
    click.echo(json.dumps({"documents": engine.index.doc_count,
                           "terms": engine.index.term_count}))


@main.command()
@click.option("--host", default=None, help="Bind address (default from config).")
@click.option("--port", type=int, default=None, help="Port (default from config).")
@click.pass_context
def serve(ctx, host, port):
    """Run the HTTP service until interrupted."""
    import uvicorn

    from .service import create_app

    engine, config = _load(ctx)
    app = create_app(engine, ui_dir=config.ui_dir)
    uvicorn.run(app, host=host or config.host, port=port or config.port,
                log_level="info")


if __name__ == "__main__":
    sys.exit(main())
