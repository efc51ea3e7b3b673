"""Command-line front door.

Exit codes are pinned: 0 success, 1 validation error, 2 IO or parse error,
3 internal error. The rendered document is the only thing on stdout;
diagnostics go to stderr as machine-parsable `error: <category>: <message>`
lines. The catalog can be swapped via the DATAWORTH_CATALOG environment
variable (an extension file path); everything else is flags.
"""

from __future__ import annotations

import functools
import os
import sys
from pathlib import Path

import click

from . import catalog as cat
from .assessment import from_replay_table, load_answers, save_answers
from .corpus import derive_rank_prior, distributions, ingest
from .errors import InputError, ParseFailure
from .numbers import to_jsonable
from .profiler import auto_fill, load_rulepack, profile as run_profile
from .report import (
    RenderSpec,
    render_comparison,
    render_delta,
    render_distribution,
    render_profile,
    render_replay,
    render_value,
)
from .scoring import (
    WeightProfile,
    compare as compare_reports,
    compute_value,
    load_weights,
    replay_check,
    what_if,
)

CATALOG_ENV = "DATAWORTH_CATALOG"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INTERNAL = 3

_FORMAT_NAMES = {"machine": "machine", "human": "human_table", "markdown": "markdown"}

format_option = click.option(
    "--format",
    "format_name",
    type=click.Choice(sorted(_FORMAT_NAMES)),
    default="human",
    show_default=True,
    help="Output rendering.",
)


def _render_spec(format_name: str, provenance: bool = False) -> RenderSpec:
    return RenderSpec(_FORMAT_NAMES[format_name], include_provenance=provenance)


def _active_catalog() -> cat.Catalog:
    return cat.load_catalog(os.environ.get(CATALOG_ENV))


def _fail(category: str, message: str, code: int):
    click.echo(f"error: {category}: {message}", err=True)
    sys.exit(code)


def guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseFailure as exc:
            _fail("parse", str(exc), EXIT_IO)
        except InputError as exc:
            _fail("validation", str(exc), EXIT_VALIDATION)
        except OSError as exc:
            _fail("io", str(exc), EXIT_IO)
        except click.exceptions.Exit:
            raise
        except click.ClickException:
            raise
        except Exception as exc:  # noqa: BLE001 - the 3-exit contract
            _fail("internal", f"{type(exc).__name__}: {exc}", EXIT_INTERNAL)

    return wrapper


def _weight_profile(
    catalog: cat.Catalog, weights_path: str | None, mode: str | None
) -> WeightProfile:
    if weights_path:
        profile = load_weights(weights_path, catalog)
        if mode and _canonical_mode(mode) != profile.mode:
            raise InputError(
                f"--mode {mode} conflicts with weights file mode {profile.mode}"
            )
        return profile
    if mode and _canonical_mode(mode) == "normalized":
        return WeightProfile.equal_normalized(catalog)
    return WeightProfile.raw_sum(catalog)


def _canonical_mode(mode: str) -> str:
    return {"raw": "raw_sum", "raw_sum": "raw_sum", "normalized": "normalized"}[mode]


mode_option = click.option(
    "--mode",
    type=click.Choice(["raw", "raw_sum", "normalized"]),
    default=None,
    help="Weighting mode when no weights file is given.",
)
weights_option = click.option(
    "--weights", "weights_path", type=click.Path(), default=None,
    help="Weight profile file.",
)


@click.group()
@click.version_option(package_name="dataworth", prog_name="dataworth")
def main():
    """Assess what a dataset is worth, facet by facet."""


@main.command(name="profile")
@click.argument("path", type=click.Path())
@click.option("--rulepack", "rulepack_path", type=click.Path(), default=None,
              help="Sensitivity rule pack file.")
@click.option("--sample-rows", type=int, default=10_000, show_default=True,
              help="Rows sampled for type and sensitivity inference.")
@click.option("--answers-out", type=click.Path(), default=None,
              help="Where to write the auto-filled answers file "
                   "[default: <path>.answers].")
@format_option
@guarded
def profile_cmd(path, rulepack_path, sample_rows, answers_out, format_name):
    """Inspect a dataset file and pre-answer catalog questions."""
    catalog = _active_catalog()
    pack = load_rulepack(rulepack_path) if rulepack_path else None
    profiled = run_profile(path, pack, sample_rows)
    filled = auto_fill(profiled, catalog)
    out_path = Path(answers_out) if answers_out else Path(str(path) + ".answers")
    save_answers(filled, out_path)
    click.echo(render_profile(profiled, _render_spec(format_name)))
    click.echo(f"answers written to {out_path}", err=True)


@main.command(name="score")
@click.option("--answers", "answers_path", type=click.Path(), required=True,
              help="Answers file to score.")
@weights_option
@mode_option
@click.option("--provenance", is_flag=True, help="Show answer provenance.")
@format_option
@guarded
def score_cmd(answers_path, weights_path, mode, provenance, format_name):
    """Score one answers file into a value report."""
    catalog = _active_catalog()
    response_set = load_answers(answers_path, catalog)
    profile = _weight_profile(catalog, weights_path, mode)
    report = compute_value(catalog, response_set, profile)
    click.echo(render_value(report, _render_spec(format_name, provenance), catalog))


@main.command(name="compare")
@click.argument("answers_paths", type=click.Path(), nargs=-1, required=True)
@weights_option
@mode_option
@format_option
@guarded
def compare_cmd(answers_paths, weights_path, mode, format_name):
    """Rank two or more answers files side by side."""
    catalog = _active_catalog()
    profile = _weight_profile(catalog, weights_path, mode)
    reports = [
        compute_value(catalog, load_answers(p, catalog), profile)
        for p in answers_paths
    ]
    comparison = compare_reports(reports)
    click.echo(render_comparison(comparison, _render_spec(format_name), catalog))


@main.command(name="whatif")
@click.option("--answers", "answers_path", type=click.Path(), required=True,
              help="Answers file to start from.")
@click.option("--set", "assignments", multiple=True, metavar="QUESTION=VALUE",
              required=True, help="Changed answer; repeatable.")
@weights_option
@mode_option
@format_option
@guarded
def whatif_cmd(answers_path, assignments, weights_path, mode, format_name):
    """Preview how changed answers would move the score."""
    catalog = _active_catalog()
    response_set = load_answers(answers_path, catalog)
    profile = _weight_profile(catalog, weights_path, mode)
    report = compute_value(catalog, response_set, profile)
    changes = []
    for assignment in assignments:
        if "=" not in assignment:
            raise InputError(f"--set needs QUESTION=VALUE, got {assignment!r}")
        qid, value = assignment.split("=", 1)
        changes.append((qid.strip(), value.strip()))
    delta = what_if(catalog, report, changes)
    click.echo(render_delta(delta, _render_spec(format_name), catalog))


@main.group(name="corpus")
def corpus_group():
    """Study many dataset descriptors at once."""


@corpus_group.command(name="scan")
@click.argument("descriptors", type=click.Path(), nargs=-1, required=True)
@click.option("--export", "export_path", type=click.Path(), default=None,
              help="Also write a delimited distribution export.")
@format_option
@guarded
def corpus_scan_cmd(descriptors, export_path, format_name):
    """Tabulate facet-value distributions over descriptor files."""
    from .corpus import save_distribution

    corpus = ingest(list(descriptors))
    for error in corpus.errors:
        click.echo(f"skipped {error.path}: {error.message}", err=True)
    table = distributions(corpus)
    if export_path:
        save_distribution(table, export_path)
        click.echo(f"export written to {export_path}", err=True)
    click.echo(render_distribution(table, _render_spec(format_name), _active_catalog()))


@corpus_group.command(name="rank")
@click.argument("descriptors", type=click.Path(), nargs=-1, required=True)
@click.option("--dimension", "dimensions", multiple=True,
              help="Dimension to rank; repeatable [default: all].")
@click.option("--override", "overrides", multiple=True, metavar="DIM=V1,V2,...",
              help="Manual preference order for one dimension; repeatable.")
@format_option
@guarded
def corpus_rank_cmd(descriptors, dimensions, overrides, format_name):
    """Derive rank priors (and draft score rules) from distributions."""
    import json

    corpus = ingest(list(descriptors))
    for error in corpus.errors:
        click.echo(f"skipped {error.path}: {error.message}", err=True)
    override_map: dict[str, list[str]] = {}
    for entry in overrides:
        if "=" not in entry:
            raise InputError(f"--override needs DIM=V1,V2,..., got {entry!r}")
        dim, order = entry.split("=", 1)
        override_map[dim.strip()] = [v.strip() for v in order.split(",") if v.strip()]
    table = distributions(corpus)
    chosen = list(dimensions) if dimensions else sorted(table.rows)
    priors = []
    for dim in chosen:
        if dim not in table.rows:
            raise InputError(f"dimension {dim!r} not observed in the corpus")
        priors.append(derive_rank_prior(table.rows[dim], override_map.get(dim)))
    from .corpus import prior_to_scores

    if _FORMAT_NAMES[format_name] == "machine":
        doc = {
            "kind": "rank_priors",
            "priors": [
                {
                    "dimension": p.dimension,
                    "order": list(p.order),
                    "provenance": p.provenance,
                    "scores": {
                        label: to_jsonable(score)
                        for label, score in prior_to_scores(p).map.items()
                    },
                }
                for p in priors
            ],
        }
        click.echo(json.dumps(doc, indent=2))
        return
    from .numbers import display_str
    from .report import markdown_table, text_table

    headers = ["Dimension", "Order", "Provenance", "Draft scores"]
    rows = []
    for p in priors:
        rule = prior_to_scores(p)
        rows.append(
            [
                p.dimension,
                ", ".join(p.order),
                p.provenance,
                ", ".join(
                    f"{label}={display_str(rule.map[label])}" for label in p.order
                ),
            ]
        )
    make = markdown_table if _FORMAT_NAMES[format_name] == "markdown" else text_table
    click.echo(make(headers, rows))


@main.command(name="replay")
@click.argument("fixture", type=click.Path())
@format_option
@guarded
def replay_cmd(fixture, format_name):
    """Re-add a published worked assessment and check its printed total.

    Exits 0 only when the engine's sum of the printed row scores equals the
    printed grand total; rows the catalog would score differently are listed
    as discrepancies either way.
    """
    _, table = from_replay_table(fixture)
    verdict = replay_check(table)
    click.echo(render_replay(verdict, _render_spec(format_name)))
    if not verdict.match:
        sys.exit(EXIT_VALIDATION)


@main.command(name="serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--store", "store_dir", type=click.Path(), default=".dataworth_sessions",
              show_default=True, help="Session store directory.")
@guarded
def serve_cmd(host, port, store_dir):
    """Run the HTTP JSON API."""
    import uvicorn

    from .service import create_app

    app = create_app(_active_catalog(), store_dir)
    click.echo(f"serving on http://{host}:{port}", err=True)
    uvicorn.run(app, host=host, port=port, log_config=None)


if __name__ == "__main__":
    main()
