"""Responses and response sets: capture, validation, merging, replay loading.

A ResponseSet records every question as either answered or omitted, never
both. DontKnow and NotApplicable are answers (scoring 0), distinct from
omission. Replay tables are TSV transcriptions of printed assessments whose
row scores are preserved verbatim, scoring quirks included.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import yaml

from . import catalog as cat
from .errors import InputError, ParseFailure
from .numbers import parse_exact, to_jsonable

PROVENANCES = ("manual", "auto_profiler", "replay_fixture")


@dataclass(frozen=True)
class Response:
    question_id: str
    value: str | Fraction
    provenance: str = "manual"
    note: str | None = None

    def is_sentinel(self) -> bool:
        return self.value in cat.SENTINELS


@dataclass(frozen=True)
class ResponseSet:
    dataset_id: str
    catalog_version: str
    responses: dict[str, Response] = field(default_factory=dict)
    omitted: frozenset[str] = frozenset()

    def __post_init__(self):
        overlap = set(self.responses) & self.omitted
        if overlap:
            raise InputError(
                f"questions both answered and omitted: {sorted(overlap)}"
            )

    def answered_ids(self) -> set[str]:
        return set(self.responses)


@dataclass(frozen=True)
class Violation:
    question_id: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    warnings: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.violations


def build_response_set(
    catalog: cat.Catalog,
    dataset_id: str,
    answers: dict[str, Response],
    extra_omitted: set[str] | None = None,
) -> ResponseSet:
    """Assemble a ResponseSet, marking unanswered catalog questions omitted."""
    omitted = set(catalog.questions) - set(answers)
    if extra_omitted:
        omitted |= extra_omitted - set(answers)
    return ResponseSet(dataset_id, catalog.version, dict(answers), frozenset(omitted))


def validate(catalog: cat.Catalog, response_set: ResponseSet) -> ValidationReport:
    """Check a response set against the catalog.

    Violations: unknown ids, inadmissible values, exclusivity conflicts.
    Warnings: unanswered canonical questions. A catalog version mismatch is a
    hard error, not a violation.
    """
    if response_set.catalog_version != catalog.version:
        raise InputError(
            f"catalog version mismatch: responses built against "
            f"{response_set.catalog_version}, catalog is {catalog.version}"
        )
    violations: list[Violation] = []
    by_group: dict[str, list[str]] = {}
    for qid, response in response_set.responses.items():
        spec = catalog.questions.get(qid)
        if spec is None:
            try:
                cat.lookup(catalog, qid)
            except cat.QuestionNotFound as exc:
                hint = f"; closest match: {exc.suggestion}" if exc.suggestion else ""
            violations.append(Violation(qid, f"unknown question id{hint}"))
            continue
        if not spec.admits(response.value):
            if spec.kind in ("numeric_unit", "categorical_or_numeric") and not isinstance(
                response.value, str
            ):
                violations.append(Violation(qid, f"value {response.value} out of [0, 1]"))
            else:
                violations.append(
                    Violation(
                        qid,
                        f"value {response.value!r} not admissible; allowed: "
                        f"{', '.join(spec.allowed_values)}",
                    )
                )
            continue
        if spec.exclusivity_group and not response.is_sentinel():
            by_group.setdefault(spec.exclusivity_group, []).append(qid)
    for group, ids in sorted(by_group.items()):
        if len(ids) > 1:
            for qid in sorted(ids):
                violations.append(
                    Violation(
                        qid,
                        f"exclusivity group {group!r} has multiple answers: "
                        f"{', '.join(sorted(ids))}",
                    )
                )
    unanswered = [
        qid
        for qid in catalog.question_order()
        if qid not in response_set.responses and catalog.questions[qid].canonical
    ]
    warnings = tuple(f"unanswered: {qid}" for qid in unanswered)
    return ValidationReport(tuple(violations), warnings)


def merge(base: ResponseSet, overlay: ResponseSet) -> ResponseSet:
    """Overlay answers win per question; provenance travels with the winner."""
    if base.dataset_id != overlay.dataset_id:
        raise InputError(
            f"dataset mismatch: {base.dataset_id!r} vs {overlay.dataset_id!r}"
        )
    if base.catalog_version != overlay.catalog_version:
        raise InputError(
            f"catalog version mismatch: {base.catalog_version} vs "
            f"{overlay.catalog_version}"
        )
    responses = dict(base.responses)
    responses.update(overlay.responses)
    omitted = (base.omitted | overlay.omitted) - set(responses)
    return ResponseSet(base.dataset_id, base.catalog_version, responses, frozenset(omitted))


# --- answers files -----------------------------------------------------------

def load_answers(
    path: str | Path, catalog: cat.Catalog, provenance: str = "manual"
) -> ResponseSet:
    """Read an answers file: a mapping question_id -> value or {value, note}."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    try:
        doc = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ParseFailure(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseFailure(f"{path}: expected a mapping at top level")
    dataset_id = str(doc.get("dataset", path.stem))
    file_prov = doc.get("provenance", provenance)
    raw = doc.get("answers", {})
    if not isinstance(raw, dict):
        raise ParseFailure(f"{path}: answers must be a mapping")
    answers: dict[str, Response] = {}
    for qid, entry in raw.items():
        note = None
        prov = file_prov
        if isinstance(entry, dict):
            if "value" not in entry:
                raise ParseFailure(f"{path}: answer {qid}: missing value")
            value = entry["value"]
            note = entry.get("note")
            prov = entry.get("provenance", file_prov)
        else:
            value = entry
        if prov not in PROVENANCES:
            raise ParseFailure(f"{path}: answer {qid}: unknown provenance {prov!r}")
        answers[qid] = Response(qid, _coerce_value(catalog, qid, value), prov, note)
    version = str(doc.get("catalog_version", catalog.version))
    rs = build_response_set(catalog, dataset_id, answers)
    return replace(rs, catalog_version=version)


def _coerce_value(catalog: cat.Catalog, qid: str, value: object) -> str | Fraction:
    spec = catalog.questions.get(qid)
    if isinstance(value, bool):
        return "Y" if value else "N"
    if isinstance(value, (int, float)):
        return parse_exact(value)
    text = str(value)
    if spec is not None and spec.kind in ("numeric_unit", "categorical_or_numeric"):
        if text not in spec.allowed_values and text not in cat.SENTINELS:
            try:
                return parse_exact(text)
            except ValueError:
                return text
    return text


def _value_to_doc(value: str | Fraction) -> object:
    if isinstance(value, Fraction):
        return to_jsonable(value)
    return value


def save_answers(response_set: ResponseSet, path: str | Path) -> None:
    doc: dict = {
        "dataset": response_set.dataset_id,
        "catalog_version": response_set.catalog_version,
        "answers": {},
    }
    for qid in sorted(response_set.responses):
        r = response_set.responses[qid]
        entry: dict = {"value": _value_to_doc(r.value), "provenance": r.provenance}
        if r.note:
            entry["note"] = r.note
        doc["answers"][qid] = entry
    Path(path).write_text(yaml.safe_dump(doc, sort_keys=False, allow_unicode=True))


# --- replay tables -----------------------------------------------------------

@dataclass(frozen=True)
class ReplayRow:
    facet_label: str
    question_text: str
    question_id: str
    raw_response: str
    value: str | Fraction
    printed_score: Fraction


@dataclass(frozen=True)
class ReplayTable:
    dataset_id: str
    printed_total: Fraction
    rows: tuple[ReplayRow, ...]


def _normalize_prompt(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", " ", text.lower()).strip()


# Alternate phrasings seen in printed assessments, keyed by normalized text.
# Mapping is literal: the response letter is carried over unchanged even when
# the phrasing inverts the canonical question, so printed scoring quirks
# surface as discrepancies instead of being silently repaired.
_PROMPT_ALIASES = {
    "what is the data layout": "data_layout.structure",
    "are these instances of primary data types": "composition.primary_types",
    "what is the format of data set": "format.file_format",
    "does it have any standard": "format.standard_compliant",
    "is the data stored in proprietary formats": "format.proprietary_open",
    "is it error free": "quality.error_free",
    "what is the data size": "data_volume.size",
    "what is the size of the data": "data_volume.size",
    "does it have medical data health data": "sensitivity.medical",
    "does it contain personal identifiable information": "sensitivity.pii_free",
    "does it have revenue or financial data": "sensitivity.financial_free",
    "does it have protected attribute": "sensitivity.protective_variables",
    "are there tools or programs to pre process the data": "processing.processing_tools",
    "is it anonymised data": "transformation.anonymized",
    "is it time series data": "statistical.time_series",
}

# Response spellings and abbreviations used by printed assessments.
_VALUE_ALIASES = {
    "NS": "NotSignificant",
    "T": "Transactional",
    "MM": "MiddleManagement",
    "TM": "ThisMonth",
    "TY": "ThisYear",
    "NA": cat.NOT_APPLICABLE,
    "DK": cat.DONT_KNOW,
    "Very Fast": "VeryFast",
    "Webcrawler": "WebCrawler",
    "Invited/Survey": "Survey",
    "last 5 yrs": "InLast5Years",
    "CSV": "csv",
    "txt": "other",
    "Single": "SingleSource",
    "Multiple": "MultipleSources",
}


def _prompt_index(catalog: cat.Catalog) -> dict[str, str]:
    index = {_normalize_prompt(q.prompt): qid for qid, q in catalog.questions.items()}
    index.update(_PROMPT_ALIASES)
    return index


def _normalize_value(spec: cat.QuestionSpec, raw: str) -> str | Fraction:
    raw = raw.strip()
    if spec.id == "sourcing.aggregation" and raw == "S":
        return "SingleSource"
    if spec.id == "sourcing.obtained" and raw == "S":
        return "Survey"
    if spec.id == "data_volume.size" and raw not in spec.allowed_values:
        try:
            return cat.size_bucket_label(cat.parse_size_bytes(raw))
        except InputError:
            pass
    mapped = _VALUE_ALIASES.get(raw, raw)
    if mapped in spec.allowed_values or mapped in cat.SENTINELS:
        return mapped
    if spec.kind in ("numeric_unit", "categorical_or_numeric"):
        try:
            return parse_exact(mapped)
        except ValueError:
            pass
    return mapped


def from_replay_table(
    path: str | Path, catalog: cat.Catalog | None = None
) -> tuple[ResponseSet, ReplayTable]:
    """Load a replay TSV into responses plus the per-row printed scores.

    Rows are (facet, question, response, score), tab-separated; `#`-prefixed
    pragma lines carry the dataset id and the printed grand total. Questions
    outside the canonical set resolve against the examples extension pack,
    which this loader activates automatically.
    """
    if catalog is None:
        catalog = cat.with_examples_pack()
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    index = _prompt_index(catalog)
    dataset_id = path.stem
    printed_total: Fraction | None = None
    rows: list[ReplayRow] = []
    answers: dict[str, Response] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            pragma = line.lstrip("#").strip()
            if ":" in pragma:
                key, _, val = pragma.partition(":")
                key, val = key.strip(), val.strip()
                if key == "dataset":
                    dataset_id = val
                elif key == "printed_total":
                    try:
                        printed_total = parse_exact(val)
                    except ValueError as exc:
                        raise ParseFailure(f"{path}:{lineno}: {exc}") from exc
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ParseFailure(
                f"{path}:{lineno}: expected 4 tab-separated fields, got {len(parts)}"
            )
        facet_label, question_text, raw_response, raw_score = (p.strip() for p in parts)
        qid = index.get(_normalize_prompt(question_text))
        if qid is None:
            raise ParseFailure(
                f"{path}:{lineno}: question not in catalog or extension pack: "
                f"{question_text!r}"
            )
        if qid in answers:
            raise ParseFailure(f"{path}:{lineno}: duplicate answer for {qid}")
        try:
            printed_score = parse_exact(raw_score)
        except ValueError as exc:
            raise ParseFailure(f"{path}:{lineno}: bad score: {exc}") from exc
        spec = catalog.questions[qid]
        value = _normalize_value(spec, raw_response)
        if not spec.admits(value):
            raise ParseFailure(
                f"{path}:{lineno}: response {raw_response!r} not admissible for {qid}"
            )
        rows.append(
            ReplayRow(facet_label, question_text, qid, raw_response, value, printed_score)
        )
        answers[qid] = Response(qid, value, "replay_fixture")
    if printed_total is None:
        raise ParseFailure(
            f"{path}: missing printed_total pragma; nothing to check against"
        )
    if not rows:
        raise ParseFailure(f"{path}: no assessment rows")
    response_set = build_response_set(catalog, dataset_id, answers)
    return response_set, ReplayTable(dataset_id, printed_total, tuple(rows))
