"""Rendering of reports, profiles and distributions.

Three formats: machine (JSON, lossless, shared with the HTTP service),
human_table (fixed-width text grouped by facet with a grand-total row) and
markdown (pipe tables). Rendering is pure; the same inputs always produce
the same bytes. Numbers print with trailing zeros trimmed, repeating
decimals rounded to four places.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import catalog as cat
from .corpus import DistributionTable, distribution_to_document
from .errors import InputError, ParseFailure
from .numbers import display_str, parse_exact, to_jsonable
from .profiler import DatasetProfile, profile_to_document
from .scoring import (
    ComparisonReport,
    DeltaReport,
    QuestionScore,
    ReplayVerdict,
    ValueReport,
)

FORMATS = ("machine", "human_table", "markdown")


@dataclass(frozen=True)
class RenderSpec:
    format: str = "human_table"
    verbosity: int = 1  # 0 summary only, 1 full table
    include_provenance: bool = False

    def __post_init__(self):
        if self.format not in FORMATS:
            raise InputError(f"unknown render format {self.format!r}")


def _num(value: Fraction) -> str:
    return display_str(value)


def _value_cell(value: str | Fraction) -> str:
    return value if isinstance(value, str) else _num(value)


def _facet_title(catalog: cat.Catalog | None, facet_id: str) -> str:
    if catalog is not None:
        try:
            return catalog.facet(facet_id).title
        except InputError:
            pass
    return facet_id


def _prompt(catalog: cat.Catalog | None, question_id: str) -> str:
    if catalog is not None and question_id in catalog.questions:
        return catalog.questions[question_id].prompt
    return question_id


def _text_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    def line(cells: list[str]) -> str:
        return " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

    rule = "-+-".join("-" * w for w in widths)
    return "\n".join([line(headers), rule] + [line(r) for r in rows])


def _markdown_table(headers: list[str], rows: list[list[str]]) -> str:
    def line(cells: list[str]) -> str:
        return "| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |"

    rule = "|" + "|".join(" --- " for _ in headers) + "|"
    return "\n".join([line(headers), rule] + [line(r) for r in rows])


def _value_rows(
    report: ValueReport, spec: RenderSpec, catalog: cat.Catalog | None
) -> tuple[list[str], list[list[str]]]:
    headers = ["Data Facet", "Sub-Facet", "Response", "Score"]
    if spec.include_provenance:
        headers.append("Provenance")
    rows: list[list[str]] = []
    last_facet = None
    for qs in report.per_question.values():
        facet_id = qs.question_id.split(".", 1)[0]
        facet_cell = "" if facet_id == last_facet else _facet_title(catalog, facet_id)
        last_facet = facet_id
        # Contribution equals the raw score under raw_sum weights, so the
        # column sums to the printed total in both modes.
        row = [
            facet_cell,
            _prompt(catalog, qs.question_id),
            _value_cell(qs.value),
            _num(qs.contribution),
        ]
        if spec.include_provenance:
            row.append(qs.provenance)
        rows.append(row)
    total_row = ["Total", "", "", _num(report.total)]
    if spec.include_provenance:
        total_row.append("")
    rows.append(total_row)
    return headers, rows


def _value_summary(report: ValueReport) -> str:
    return (
        f"Dataset: {report.dataset_id}\n"
        f"Catalog: {report.catalog_version}  Mode: {report.mode}\n"
        f"Answered: {report.answered_count}  Omitted: {report.omitted_count}  "
        f"DontKnow: {report.dont_know_count}  "
        f"NotApplicable: {report.not_applicable_count}\n"
        f"Total: {_num(report.total)}"
    )


def value_to_document(report: ValueReport) -> dict:
    """Lossless plain-data view of a ValueReport."""
    def qdoc(qs: QuestionScore) -> dict:
        return {
            "question_id": qs.question_id,
            "value": qs.value if isinstance(qs.value, str) else to_jsonable(qs.value),
            "value_kind": "label" if isinstance(qs.value, str) else "number",
            "score": to_jsonable(qs.score),
            "weight": to_jsonable(qs.weight),
            "contribution": to_jsonable(qs.contribution),
            "provenance": qs.provenance,
        }

    return {
        "kind": "value_report",
        "dataset_id": report.dataset_id,
        "catalog_version": report.catalog_version,
        "mode": report.mode,
        "renormalize_on_omission": report.renormalize_on_omission,
        "profile_fingerprint": report.profile_fingerprint,
        "total": to_jsonable(report.total),
        "answered_count": report.answered_count,
        "omitted_count": report.omitted_count,
        "dont_know_count": report.dont_know_count,
        "not_applicable_count": report.not_applicable_count,
        "facet_subtotals": {
            facet: to_jsonable(value) for facet, value in report.facet_subtotals.items()
        },
        "questions": [qdoc(qs) for qs in report.per_question.values()],
    }


def value_from_document(doc: dict) -> ValueReport:
    """Rebuild a ValueReport from its machine document."""
    try:
        per_question = {}
        for q in doc["questions"]:
            value = (
                q["value"] if q["value_kind"] == "label" else parse_exact(q["value"])
            )
            per_question[q["question_id"]] = QuestionScore(
                question_id=q["question_id"],
                value=value,
                score=parse_exact(q["score"]),
                weight=parse_exact(q["weight"]),
                contribution=parse_exact(q["contribution"]),
                provenance=q["provenance"],
            )
        return ValueReport(
            dataset_id=doc["dataset_id"],
            catalog_version=doc["catalog_version"],
            mode=doc["mode"],
            renormalize_on_omission=doc["renormalize_on_omission"],
            profile_fingerprint=doc["profile_fingerprint"],
            per_question=per_question,
            facet_subtotals={
                facet: parse_exact(value)
                for facet, value in doc["facet_subtotals"].items()
            },
            total=parse_exact(doc["total"]),
            answered_count=doc["answered_count"],
            omitted_count=doc["omitted_count"],
            dont_know_count=doc["dont_know_count"],
            not_applicable_count=doc["not_applicable_count"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseFailure(f"malformed value report document: {exc}") from exc


def render_value(
    report: ValueReport, spec: RenderSpec, catalog: cat.Catalog | None = None
) -> str:
    """Render one assessment: facet-grouped table plus a grand-total row."""
    if spec.format == "machine":
        return json.dumps(value_to_document(report), indent=2)
    summary = _value_summary(report)
    if spec.verbosity < 1:
        return summary
    headers, rows = _value_rows(report, spec, catalog)
    table = (
        _markdown_table(headers, rows)
        if spec.format == "markdown"
        else _text_table(headers, rows)
    )
    return summary + "\n\n" + table


def render_comparison(
    cmp: ComparisonReport, spec: RenderSpec, catalog: cat.Catalog | None = None
) -> str:
    """Render a side-by-side comparison with diff markers on disagreements."""
    if spec.format == "machine":
        return json.dumps(comparison_to_document(cmp), indent=2)
    dataset_ids = [dataset_id for dataset_id, _ in cmp.ranking]
    lines = [f"Comparison ({cmp.mode})", ""]
    rank_rows = [
        [str(i + 1), dataset_id, _num(total)]
        for i, (dataset_id, total) in enumerate(cmp.ranking)
    ]
    make = _markdown_table if spec.format == "markdown" else _text_table
    lines.append(make(["Rank", "Dataset", "Total"], rank_rows))
    lines.append("")
    lines.append(f"Winner: {cmp.winner}")
    if spec.verbosity >= 1:
        headers = ["Sub-Facet"] + dataset_ids + ["Diff"]
        rows = []
        for row in cmp.rows:
            cells = [_prompt(catalog, row.question_id)]
            for dataset_id in dataset_ids:
                value = row.values.get(dataset_id)
                score = row.scores.get(dataset_id)
                if value is None and score is None:
                    cells.append("-")
                else:
                    cells.append(f"{_value_cell(value)} ({_num(score)})")
            cells.append("*" if row.differs else "")
            rows.append(cells)
        lines.append("")
        lines.append(make(headers, rows))
    return "\n".join(lines)


def comparison_to_document(cmp: ComparisonReport) -> dict:
    return {
        "kind": "comparison_report",
        "mode": cmp.mode,
        "winner": cmp.winner,
        "ranking": [
            {"dataset_id": dataset_id, "total": to_jsonable(total)}
            for dataset_id, total in cmp.ranking
        ],
        "rows": [
            {
                "question_id": row.question_id,
                "values": {
                    ds: (v if isinstance(v, str) else to_jsonable(v)) if v is not None else None
                    for ds, v in row.values.items()
                },
                "scores": {
                    ds: to_jsonable(s) if s is not None else None
                    for ds, s in row.scores.items()
                },
                "differs": row.differs,
            }
            for row in cmp.rows
        ],
    }


def render_distribution(
    table: DistributionTable, spec: RenderSpec, catalog: cat.Catalog | None = None
) -> str:
    """Render per-dimension counts; dimensions follow catalog order when known."""
    if not table.rows:
        raise InputError("empty distribution table")
    if spec.format == "machine":
        doc = distribution_to_document(table)
        doc["kind"] = "distribution_table"
        return json.dumps(doc, indent=2)
    order = sorted(table.rows)
    if catalog is not None:
        known = [qid for qid in catalog.question_order() if qid in table.rows]
        order = known + [d for d in order if d not in known]
    headers = ["Dimension", "Value", "Count", "Missing"]
    rows = []
    for dimension in order:
        row = table.rows[dimension]
        first = True
        for value, count in row.counts.items():
            rows.append(
                [
                    dimension if first else "",
                    value,
                    str(count),
                    str(row.missing) if first else "",
                ]
            )
            first = False
    make = _markdown_table if spec.format == "markdown" else _text_table
    return f"Corpus size: {table.corpus_size}\n\n" + make(headers, rows)


def render_profile(profile: DatasetProfile, spec: RenderSpec) -> str:
    """Render a dataset profile: summary lines plus schema and flag tables."""
    if spec.format == "machine":
        doc = profile_to_document(profile)
        doc["kind"] = "dataset_profile"
        return json.dumps(doc, indent=2)
    lines = [
        f"Path: {', '.join(profile.paths) or '(none)'}",
        f"Format: {profile.detected_format}  Structure: {profile.structure_class}",
        f"Bytes: {profile.byte_size}  Size bucket score: {_num(profile.size_bucket_score)}",
        f"Rows: {profile.row_count}  Parse errors: {profile.parse_error_rows}  "
        f"Duplicate fraction: {_num(profile.duplicate_row_fraction)}",
        f"Schema: {'yes' if profile.has_schema else 'no'}  "
        f"Granularity: {profile.granularity_guess}  "
        f"Time series: {'yes' if profile.time_series else 'no'}",
    ]
    if spec.verbosity >= 1 and profile.schema:
        make = _markdown_table if spec.format == "markdown" else _text_table
        rows = [
            [
                f.name,
                f.inferred_type,
                _num(profile.field_completeness.get(f.name, Fraction(1))),
            ]
            for f in profile.schema
        ]
        lines.append("")
        lines.append(make(["Field", "Type", "Completeness"], rows))
    flags = profile.sensitivity_flags
    flagged = [
        (kind, getattr(flags, kind))
        for kind in ("pii_columns", "protected_columns", "financial_columns", "health_columns")
        if getattr(flags, kind)
    ]
    if flagged:
        lines.append("")
        for kind, matches in flagged:
            names = ", ".join(m.column for m in matches)
            lines.append(f"{kind.replace('_', ' ')}: {names}")
    return "\n".join(lines)


def render_delta(delta: DeltaReport, spec: RenderSpec, catalog: cat.Catalog | None = None) -> str:
    """Render a what-if preview: per-change deltas and the new total."""
    if spec.format == "machine":
        return json.dumps(delta_to_document(delta), indent=2)
    headers = ["Sub-Facet", "From", "To", "Score", "New Score", "Delta"]
    rows = [
        [
            _prompt(catalog, c.question_id),
            _value_cell(c.old_value),
            _value_cell(c.new_value),
            _num(c.old_score),
            _num(c.new_score),
            _signed(c.delta),
        ]
        for c in delta.changes
    ]
    make = _markdown_table if spec.format == "markdown" else _text_table
    return (
        f"Dataset: {delta.dataset_id}\n"
        f"Base total: {_num(delta.base_total)}  New total: {_num(delta.new_total)}  "
        f"Delta: {_signed(delta.delta_total)}\n\n" + make(headers, rows)
    )


def _signed(value: Fraction) -> str:
    text = _num(value)
    return "+" + text if value > 0 else text


def delta_to_document(delta: DeltaReport) -> dict:
    return {
        "kind": "delta_report",
        "dataset_id": delta.dataset_id,
        "base_total": to_jsonable(delta.base_total),
        "new_total": to_jsonable(delta.new_total),
        "delta_total": to_jsonable(delta.delta_total),
        "changes": [
            {
                "question_id": c.question_id,
                "old_value": c.old_value if isinstance(c.old_value, str) else to_jsonable(c.old_value),
                "new_value": c.new_value if isinstance(c.new_value, str) else to_jsonable(c.new_value),
                "old_score": to_jsonable(c.old_score),
                "new_score": to_jsonable(c.new_score),
                "weight": to_jsonable(c.weight),
                "delta": to_jsonable(c.delta),
            }
            for c in delta.changes
        ],
    }


# Public table builders for callers that assemble their own rows.
text_table = _text_table
markdown_table = _markdown_table


def render_replay(verdict: ReplayVerdict, spec: RenderSpec) -> str:
    """Render a replay verdict with its discrepancy rows."""
    if spec.format == "machine":
        return json.dumps(replay_to_document(verdict), indent=2)
    lines = [
        f"Dataset: {verdict.dataset_id}",
        f"Rows: {verdict.row_count}",
        f"Engine sum: {_num(verdict.engine_sum)}",
        f"Printed total: {_num(verdict.printed_total)}",
        f"Match: {'yes' if verdict.match else 'no'}",
    ]
    if spec.verbosity >= 1 and verdict.discrepancies:
        headers = ["Sub-Facet", "Response", "Printed", "Catalog rule"]
        rows = [
            [d.question_text, d.response, _num(d.printed_score), _num(d.catalog_score)]
            for d in verdict.discrepancies
        ]
        make = _markdown_table if spec.format == "markdown" else _text_table
        lines.append("")
        lines.append(
            f"Rows scored differently by the catalog: {len(verdict.discrepancies)}"
        )
        lines.append(make(headers, rows))
    return "\n".join(lines)


def replay_to_document(verdict: ReplayVerdict) -> dict:
    return {
        "kind": "replay_verdict",
        "dataset_id": verdict.dataset_id,
        "engine_sum": to_jsonable(verdict.engine_sum),
        "printed_total": to_jsonable(verdict.printed_total),
        "match": verdict.match,
        "row_count": verdict.row_count,
        "discrepancies": [
            {
                "question_id": d.question_id,
                "question_text": d.question_text,
                "response": d.response,
                "printed_score": to_jsonable(d.printed_score),
                "catalog_score": to_jsonable(d.catalog_score),
            }
            for d in verdict.discrepancies
        ],
    }
