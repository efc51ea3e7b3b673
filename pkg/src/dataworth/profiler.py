"""File inspection that pre-answers catalog questions from evidence.

A profile run detects format and structure, sizes the file into the volume
buckets, infers a schema and field types from a bounded sample, streams the
whole file once for completeness and duplicate statistics, and matches a
rule pack against field names and sampled values for sensitive content. The
resulting DatasetProfile converts to a ResponseSet whose answers carry
auto_profiler provenance; anything without evidence stays omitted.

Profiling the same bytes twice yields an identical profile: every list is
ordered, nothing depends on clock, locale or dict iteration accidents.
"""

from __future__ import annotations

import csv
import hashlib
import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

import yaml

from . import catalog as cat
from .assessment import Response, ResponseSet, build_response_set
from .errors import InputError, ParseFailure

SAMPLE_ROWS = 10_000
SNIFF_BYTES = 64 * 1024
MISSING_MARKERS = frozenset({"", "na", "n/a", "null", "none", "nan"})

FORMATS = ("csv", "tsv", "json", "xml", "pdf", "gif_jpg", "other")
STRUCTURE_OF_FORMAT = {
    "csv": "structured",
    "tsv": "structured",
    "json": "semi_structured",
    "xml": "semi_structured",
    "pdf": "unstructured",
    "gif_jpg": "unstructured",
    "other": "unstructured",
}
LAYOUT_ANSWER = {
    "structured": "Structured",
    "semi_structured": "Semi-structured",
    "unstructured": "Unstructured",
}

_SIZE_SCORE = {
    "LessThan500MB": Fraction(1, 2),
    "From500MBTo10GB": Fraction(3, 4),
    "From10GBTo100GB": Fraction(1),
    "MoreThan100GB": Fraction(1, 2),
}

_MAGIC = (
    (b"%PDF-", "pdf"),
    (b"GIF87a", "gif_jpg"),
    (b"GIF89a", "gif_jpg"),
    (b"\xff\xd8\xff", "gif_jpg"),
)

_EXTENSION = {
    ".csv": "csv",
    ".tsv": "tsv",
    ".tab": "tsv",
    ".json": "json",
    ".jsonl": "json",
    ".ndjson": "json",
    ".xml": "xml",
    ".pdf": "pdf",
    ".gif": "gif_jpg",
    ".jpg": "gif_jpg",
    ".jpeg": "gif_jpg",
}


@dataclass(frozen=True)
class HeuristicRule:
    id: str
    kind: str  # pii_name | pii_value | protected_name | health_name | financial_name
    pattern: str
    confidence: str = "high"
    enabled: bool = True

    def __post_init__(self):
        re.compile(self.pattern)


@dataclass(frozen=True)
class HeuristicRulePack:
    rules: tuple[HeuristicRule, ...]

    def __post_init__(self):
        ids = [r.id for r in self.rules]
        dupes = {i for i in ids if ids.count(i) > 1}
        if dupes:
            raise InputError(f"duplicate rule ids: {sorted(dupes)}")

    def enabled_rules(self, kind: str) -> tuple[HeuristicRule, ...]:
        return tuple(r for r in self.rules if r.enabled and r.kind == kind)

    def with_toggled(self, rule_id: str, enabled: bool) -> "HeuristicRulePack":
        if rule_id not in {r.id for r in self.rules}:
            raise InputError(f"unknown rule id {rule_id!r}")
        return HeuristicRulePack(
            tuple(
                replace(r, enabled=enabled) if r.id == rule_id else r
                for r in self.rules
            )
        )


def default_rulepack() -> HeuristicRulePack:
    def name(rid, kind, words, confidence="high"):
        return HeuristicRule(rid, kind, r"(^|[^a-z])(" + "|".join(words) + r")($|[^a-z])", confidence)

    return HeuristicRulePack(
        (
            name(
                "pii.names",
                "pii_name",
                [
                    "email", "e mail", "phone", "mobile", "ssn",
                    "social security", "passport", "address", "zipcode",
                    "zip code", "postcode", "name", "surname", "dob",
                    "date of birth", "aadhaar", "national id", "ip address",
                    "username",
                ],
            ),
            HeuristicRule(
                "pii.value.email",
                "pii_value",
                r"^[A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,}$",
            ),
            HeuristicRule("pii.value.ssn", "pii_value", r"^\d{3}-\d{2}-\d{4}$"),
            HeuristicRule(
                "pii.value.phone",
                "pii_value",
                r"^(?=(?:\D*\d){9,})\+?\d[\d ()-]{7,}\d$",
                confidence="medium",
            ),
            name(
                "protected.names",
                "protected_name",
                [
                    "gender", "sex", "race", "ethnicity", "religion", "caste",
                    "age", "disability", "marital status", "nationality",
                    "sexual orientation", "veteran",
                ],
            ),
            name(
                "health.names",
                "health_name",
                [
                    "diagnosis", "disease", "icd", "medication", "prescription",
                    "blood", "bmi", "health", "medical", "patient", "symptom",
                    "treatment", "allergy",
                ],
            ),
            name(
                "financial.names",
                "financial_name",
                [
                    "salary", "income", "revenue", "balance", "credit", "debit",
                    "iban", "invoice", "payment", "tax", "wage", "profit",
                    "account number",
                ],
            ),
        )
    )


def load_rulepack(path: str | Path) -> HeuristicRulePack:
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text()) or {}
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    except yaml.YAMLError as exc:
        raise ParseFailure(f"{path}: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("rules"), list):
        raise ParseFailure(f"{path}: expected a mapping with a rules list")
    rules = []
    for i, entry in enumerate(doc["rules"]):
        if not isinstance(entry, dict):
            raise ParseFailure(f"{path}: rule {i} is not a mapping")
        try:
            rules.append(
                HeuristicRule(
                    id=str(entry["id"]),
                    kind=str(entry["kind"]),
                    pattern=str(entry["pattern"]),
                    confidence=str(entry.get("confidence", "high")),
                    enabled=bool(entry.get("enabled", True)),
                )
            )
        except KeyError as exc:
            raise ParseFailure(f"{path}: rule {i} missing {exc}") from exc
        except re.error as exc:
            raise ParseFailure(f"{path}: rule {i} pattern: {exc}") from exc
    return HeuristicRulePack(tuple(rules))


def save_rulepack(pack: HeuristicRulePack, path: str | Path) -> None:
    doc = {
        "rules": [
            {
                "id": r.id,
                "kind": r.kind,
                "pattern": r.pattern,
                "confidence": r.confidence,
                "enabled": r.enabled,
            }
            for r in pack.rules
        ]
    }
    Path(path).write_text(yaml.safe_dump(doc, sort_keys=False))


@dataclass(frozen=True)
class FieldInfo:
    name: str
    inferred_type: str  # number | string | date | boolean


@dataclass(frozen=True)
class ColumnMatch:
    column: str
    rule_ids: tuple[str, ...]
    evidence: str  # masked sample or the matching column name


@dataclass(frozen=True)
class SensitivityFlags:
    pii_columns: tuple[ColumnMatch, ...] = ()
    protected_columns: tuple[ColumnMatch, ...] = ()
    financial_columns: tuple[ColumnMatch, ...] = ()
    health_columns: tuple[ColumnMatch, ...] = ()

    def any_flagged(self) -> bool:
        return bool(
            self.pii_columns
            or self.protected_columns
            or self.financial_columns
            or self.health_columns
        )


@dataclass(frozen=True)
class DatasetProfile:
    paths: tuple[str, ...]
    detected_format: str
    byte_size: int
    size_bucket_score: Fraction
    structure_class: str
    has_schema: bool
    schema: tuple[FieldInfo, ...]
    row_count: int
    field_completeness: dict[str, Fraction]
    duplicate_row_fraction: Fraction
    parse_error_rows: int
    granularity_guess: str  # aggregate | individual | unknown
    sensitivity_flags: SensitivityFlags
    time_series: bool
    primary_types_only: bool
    instances_similar: bool

    def __post_init__(self):
        if self.byte_size < 0:
            raise InputError("byte_size must be >= 0")
        if self.size_bucket_score not in (Fraction(1, 2), Fraction(3, 4), Fraction(1)):
            raise InputError(f"size_bucket_score {self.size_bucket_score} not a bucket score")
        for name, fraction in self.field_completeness.items():
            if not 0 <= fraction <= 1:
                raise InputError(f"completeness out of [0, 1] for {name}")
        if not 0 <= self.duplicate_row_fraction <= 1:
            raise InputError("duplicate_row_fraction out of [0, 1]")

    @classmethod
    def empty(cls) -> "DatasetProfile":
        return cls(
            paths=(),
            detected_format="other",
            byte_size=0,
            size_bucket_score=Fraction(1, 2),
            structure_class="unstructured",
            has_schema=False,
            schema=(),
            row_count=0,
            field_completeness={},
            duplicate_row_fraction=Fraction(0),
            parse_error_rows=0,
            granularity_guess="unknown",
            sensitivity_flags=SensitivityFlags(),
            time_series=False,
            primary_types_only=False,
            instances_similar=False,
        )


def detect_format(path: str | Path) -> str:
    """Classify a file: magic bytes, then content shape, then extension."""
    path = Path(path)
    try:
        with open(path, "rb") as handle:
            head = handle.read(SNIFF_BYTES)
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    for magic, label in _MAGIC:
        if head.startswith(magic):
            return label
    try:
        text = head.decode("utf-8")
    except UnicodeDecodeError:
        return _EXTENSION.get(path.suffix.lower(), "other")
    stripped = text.lstrip("﻿ \t\r\n")
    if stripped.startswith(("{", "[")) and _looks_like_json(stripped):
        return "json"
    if stripped.startswith("<"):
        return "xml"
    delimited = _sniff_delimited(text)
    if delimited:
        return delimited
    return _EXTENSION.get(path.suffix.lower(), "other")


def _looks_like_json(sample: str) -> bool:
    try:
        json.loads(sample)
        return True
    except json.JSONDecodeError as exc:
        # A truncated sniff window cuts valid json short; trust the opening
        # bracket when the error sits at the cut, and accept record-per-line
        # streams whose first line parses alone.
        if exc.pos >= len(sample) - 256:
            return True
    first_line = sample.splitlines()[0] if sample.splitlines() else ""
    try:
        json.loads(first_line)
        return True
    except json.JSONDecodeError:
        return False


def _sniff_delimited(text: str) -> str | None:
    lines = [l for l in text.splitlines()[:50] if l.strip()]
    if len(text.splitlines()) > 1 and text.rsplit("\n", 1)[-1]:
        lines = lines[:-1] or lines  # drop the line the sniff window truncated
    if len(lines) < 2:
        return None
    best = None
    for delimiter, label in ((",", "csv"), ("\t", "tsv")):
        counts = {len(next(csv.reader([l], delimiter=delimiter))) for l in lines}
        if len(counts) == 1:
            width = counts.pop()
            if width > 1 and (best is None or width > best[0]):
                best = (width, label)
    return best[1] if best else None


def classify_structure(detected_format: str) -> str:
    if detected_format not in STRUCTURE_OF_FORMAT:
        raise InputError(f"unknown format {detected_format!r}")
    return STRUCTURE_OF_FORMAT[detected_format]


def size_bucket(byte_size: int) -> Fraction:
    """Score the volume bucket for a byte count."""
    return _SIZE_SCORE[cat.size_bucket_label(byte_size)]


_NUMBER_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
# Single token shaped like a column name: no spaces, starts with a letter.
_IDENTIFIERISH_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_.-]{0,63}$")
_DATE_RE = re.compile(
    r"^(\d{4}[-/]\d{1,2}[-/]\d{1,2}|\d{1,2}[-/]\d{1,2}[-/]\d{4})([ T]\d{2}:\d{2}(:\d{2})?)?$"
)
_BOOLEAN = frozenset({"true", "false"})


def _cell_type(cell: str) -> str:
    cell = cell.strip()
    if _NUMBER_RE.match(cell):
        return "number"
    if _DATE_RE.match(cell):
        return "date"
    if cell.lower() in _BOOLEAN:
        return "boolean"
    return "string"


def _column_type(cells: list[str]) -> str:
    observed = [_cell_type(c) for c in cells if c.strip().lower() not in MISSING_MARKERS]
    if not observed:
        return "string"
    for candidate in ("number", "date", "boolean"):
        if all(o == candidate for o in observed):
            return candidate
    return "string"


def infer_schema(
    path: str | Path, detected_format: str, sample_rows: int = SAMPLE_ROWS
) -> tuple[bool, tuple[FieldInfo, ...]]:
    """Detect a header or key structure and infer field types from a sample."""
    path = Path(path)
    if detected_format in ("csv", "tsv"):
        return _infer_delimited_schema(path, detected_format, sample_rows)
    if detected_format == "json":
        return _infer_json_schema(path, sample_rows)
    if detected_format == "xml":
        return _infer_xml_schema(path, sample_rows)
    raise InputError(f"schema inference needs structured content, got {detected_format}")


def _read_delimited(path: Path, detected_format: str, limit: int) -> list[list[str]]:
    delimiter = "," if detected_format == "csv" else "\t"
    rows: list[list[str]] = []
    try:
        with open(path, newline="", encoding="utf-8", errors="replace") as handle:
            for row in csv.reader(handle, delimiter=delimiter):
                if row:
                    rows.append(row)
                if len(rows) >= limit:
                    break
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    return rows


def _infer_delimited_schema(
    path: Path, detected_format: str, sample_rows: int
) -> tuple[bool, tuple[FieldInfo, ...]]:
    rows = _read_delimited(path, detected_format, sample_rows + 1)
    if not rows:
        return False, ()
    head, body = rows[0], rows[1:]
    width = max(len(r) for r in rows)
    columns = [[r[i] for r in body if i < len(r)] for i in range(width)]
    body_types = [_column_type(c) for c in columns]
    # Header by contrast with the body: the first row is all non-numeric
    # while at least one column body is numeric, or (for all-string tables)
    # the first row is made of identifier-like names while some column body
    # is clearly free text.
    head_nonnumeric = all(_cell_type(c) != "number" for c in head)
    has_header = bool(body) and head_nonnumeric and "number" in body_types
    if not has_header and body and head_nonnumeric:
        head_identifierish = all(_IDENTIFIERISH_RE.match(c) for c in head)
        freetext_column = any(
            cells and not any(_IDENTIFIERISH_RE.match(c) for c in cells)
            for cells in columns
        )
        has_header = head_identifierish and freetext_column
    if has_header:
        names = [c.strip() or f"column_{i + 1}" for i, c in enumerate(head)]
        names += [f"column_{i + 1}" for i in range(len(names), width)]
        return True, tuple(FieldInfo(n, t) for n, t in zip(names, body_types))
    columns = [[r[i] for r in rows if i < len(r)] for i in range(width)]
    types = [_column_type(c) for c in columns]
    return False, tuple(
        FieldInfo(f"column_{i + 1}", t) for i, t in enumerate(types)
    )


def _json_records(doc: object, sample_rows: int) -> list[dict]:
    if isinstance(doc, dict):
        return [doc]
    if isinstance(doc, list):
        return [r for r in doc[:sample_rows] if isinstance(r, dict)]
    return []


def _load_json(path: Path, sample_rows: int) -> list[dict]:
    try:
        with open(path, encoding="utf-8", errors="replace") as handle:
            first = handle.read(1)
            handle.seek(0)
            if first == "{":
                # Either one object or a record-per-line stream.
                line = handle.readline()
                try:
                    record = json.loads(line)
                except json.JSONDecodeError:
                    handle.seek(0)
                    return _json_records(json.load(handle), sample_rows)
                records = [record] if isinstance(record, dict) else []
                for line in handle:
                    if not line.strip():
                        continue
                    if len(records) >= sample_rows:
                        break
                    records.append(json.loads(line))
                return [r for r in records if isinstance(r, dict)]
            return _json_records(json.load(handle), sample_rows)
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{path}: malformed content at byte {exc.pos}") from exc


def _scalar_json_type(value: object) -> str:
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, (int, float)):
        return "number"
    if isinstance(value, str):
        return _cell_type(value) if _DATE_RE.match(value.strip()) else "string"
    return "string"


def _infer_json_schema(path: Path, sample_rows: int) -> tuple[bool, tuple[FieldInfo, ...]]:
    records = _load_json(path, sample_rows)
    if not records:
        return False, ()
    key_sets = {tuple(sorted(r)) for r in records}
    keys = sorted({k for r in records for k in r})
    fields = []
    for key in keys:
        values = [r[key] for r in records if key in r and r[key] is not None]
        types = {_scalar_json_type(v) for v in values} or {"string"}
        fields.append(FieldInfo(key, types.pop() if len(types) == 1 else "string"))
    return len(key_sets) == 1, tuple(fields)


def _xml_records(path: Path, sample_rows: int) -> list[ET.Element]:
    records = []
    try:
        for event, element in ET.iterparse(path, events=("end",)):
            records.append(element)
            if len(records) > sample_rows:
                break
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    except ET.ParseError as exc:
        line, column = exc.position
        raise ParseFailure(
            f"{path}: malformed content at line {line}, column {column}"
        ) from exc
    root = records[-1] if records else None
    return list(root) if root is not None else []


def _infer_xml_schema(path: Path, sample_rows: int) -> tuple[bool, tuple[FieldInfo, ...]]:
    children = _xml_records(path, sample_rows)[:sample_rows]
    if not children:
        return False, ()
    tag_sets = {tuple(sorted(c.tag for c in child)) for child in children}
    tags = sorted({c.tag for child in children for c in child})
    if not tags:
        # Leaf children under the root: the children themselves are fields.
        tags = sorted({c.tag for c in children})
        return len({c.tag for c in children}) == len(children), tuple(
            FieldInfo(t, "string") for t in tags
        )
    fields = []
    for tag in tags:
        cells = [
            (c.text or "") for child in children for c in child if c.tag == tag
        ]
        fields.append(FieldInfo(tag, _column_type(cells)))
    return len(tag_sets) == 1, tuple(fields)


def _mask(value: str) -> str:
    value = value.strip()
    if len(value) <= 2:
        return "*" * len(value)
    return value[:2] + "*" * (len(value) - 2)


def _normalize_name(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", " ", name.lower()).strip()


def scan_sensitivity(
    fields: tuple[FieldInfo, ...],
    sample_columns: dict[str, list[str]],
    rulepack: HeuristicRulePack | None = None,
) -> SensitivityFlags:
    """Match rule-pack patterns against field names and sampled values."""
    pack = rulepack or default_rulepack()
    kinds = {
        "pii_name": {},
        "protected_name": {},
        "health_name": {},
        "financial_name": {},
    }
    for kind, hits in kinds.items():
        for rule in pack.enabled_rules(kind):
            pattern = re.compile(rule.pattern)
            for info in fields:
                if pattern.search(_normalize_name(info.name)):
                    hits.setdefault(info.name, ([], info.name))[0].append(rule.id)
    for rule in pack.enabled_rules("pii_value"):
        pattern = re.compile(rule.pattern)
        for info in fields:
            if info.inferred_type == "date":
                continue  # date shapes collide with digit-run patterns
            cells = [c for c in sample_columns.get(info.name, []) if c.strip()]
            if not cells:
                continue
            matched = [c for c in cells if pattern.match(c.strip())]
            if len(matched) * 2 >= len(cells):  # majority of non-empty values
                hits = kinds["pii_name"].setdefault(info.name, ([], _mask(matched[0])))
                hits[0].append(rule.id)
                if hits[1] == info.name:
                    kinds["pii_name"][info.name] = (hits[0], _mask(matched[0]))

    def matches(kind: str) -> tuple[ColumnMatch, ...]:
        return tuple(
            ColumnMatch(column, tuple(sorted(set(ids))), evidence)
            for column, (ids, evidence) in sorted(kinds[kind].items())
        )

    return SensitivityFlags(
        pii_columns=matches("pii_name"),
        protected_columns=matches("protected_name"),
        financial_columns=matches("financial_name"),
        health_columns=matches("health_name"),
    )


@dataclass(frozen=True)
class QualityStats:
    row_count: int
    field_completeness: dict[str, Fraction]
    duplicate_row_fraction: Fraction
    parse_error_rows: int


def quality_scan(
    path: str | Path,
    detected_format: str,
    fields: tuple[FieldInfo, ...],
    has_header: bool,
) -> QualityStats:
    """Stream the whole file once for completeness and duplicate statistics."""
    if detected_format not in ("csv", "tsv"):
        raise InputError(f"quality scan needs delimited content, got {detected_format}")
    delimiter = "," if detected_format == "csv" else "\t"
    names = [f.name for f in fields]
    missing = {name: 0 for name in names}
    seen: set[bytes] = set()
    rows = duplicates = errors = 0
    try:
        with open(path, newline="", encoding="utf-8", errors="replace") as handle:
            reader = csv.reader(handle, delimiter=delimiter)
            if has_header:
                next(reader, None)
            for row in reader:
                if not row:
                    continue
                if len(row) != len(names):
                    errors += 1
                    continue
                rows += 1
                for name, cell in zip(names, row):
                    if cell.strip().lower() in MISSING_MARKERS:
                        missing[name] += 1
                digest = hashlib.sha256(
                    "\x1f".join(row).encode("utf-8", "replace")
                ).digest()
                if digest in seen:
                    duplicates += 1
                else:
                    seen.add(digest)
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    completeness = {
        name: Fraction(rows - count, rows) if rows else Fraction(1)
        for name, count in missing.items()
    }
    return QualityStats(
        row_count=rows,
        field_completeness=completeness,
        duplicate_row_fraction=Fraction(duplicates, rows) if rows else Fraction(0),
        parse_error_rows=errors,
    )


_IDENTIFIER_RE = re.compile(r"(^|[^a-z])(id|uuid|guid|ssn|email|name)($|[^a-z])")
_AGGREGATE_RE = re.compile(
    r"(^|[^a-z])(total|count|sum|rate|avg|average|mean|median|pct|percent|share)($|[^a-z])"
)


def guess_granularity(fields: tuple[FieldInfo, ...]) -> str:
    names = [_normalize_name(f.name) for f in fields]
    if any(_IDENTIFIER_RE.search(n) for n in names):
        return "individual"
    if any(_AGGREGATE_RE.search(n) for n in names):
        return "aggregate"
    return "unknown"


def _sample_columns(
    path: Path, detected_format: str, fields: tuple[FieldInfo, ...],
    has_header: bool, sample_rows: int,
) -> dict[str, list[str]]:
    names = [f.name for f in fields]
    if detected_format in ("csv", "tsv"):
        rows = _read_delimited(path, detected_format, sample_rows + 1)
        if has_header:
            rows = rows[1:]
        return {
            name: [r[i] for r in rows if i < len(r)] for i, name in enumerate(names)
        }
    if detected_format == "json":
        records = _load_json(path, sample_rows)
        return {
            name: [
                str(r[name]) for r in records if name in r and r[name] is not None
            ]
            for name in names
        }
    if detected_format == "xml":
        children = _xml_records(path, sample_rows)[:sample_rows]
        return {
            name: [
                (c.text or "") for child in children for c in child if c.tag == name
            ]
            for name in names
        }
    return {name: [] for name in names}


def _row_shapes_similar(path: Path, detected_format: str, sample_rows: int) -> bool:
    if detected_format in ("csv", "tsv"):
        rows = _read_delimited(path, detected_format, sample_rows)
        widths = {len(r) for r in rows}
        return len(widths) <= 1
    if detected_format == "json":
        records = _load_json(path, sample_rows)
        return len({tuple(sorted(r)) for r in records}) <= 1
    if detected_format == "xml":
        children = _xml_records(path, sample_rows)[:sample_rows]
        return len({tuple(sorted(c.tag for c in child)) for child in children}) <= 1
    return False


def _primary_types_only(path: Path, detected_format: str, sample_rows: int) -> bool:
    if detected_format in ("csv", "tsv"):
        return True  # delimited cells are scalars by construction
    if detected_format == "json":
        records = _load_json(path, sample_rows)
        return bool(records) and all(
            not isinstance(v, (dict, list)) for r in records for v in r.values()
        )
    if detected_format == "xml":
        children = _xml_records(path, sample_rows)[:sample_rows]
        return bool(children) and all(
            len(grandchild) == 0 for child in children for grandchild in child
        )
    return False


def profile(
    path: str | Path,
    rulepack: HeuristicRulePack | None = None,
    sample_rows: int = SAMPLE_ROWS,
) -> DatasetProfile:
    """Inspect one dataset file and gather every evidence-backed statistic."""
    path = Path(path)
    if not path.is_file():
        raise ParseFailure(f"{path}: not a readable file")
    byte_size = path.stat().st_size
    detected_format = detect_format(path)
    structure_class = classify_structure(detected_format)

    has_schema = False
    fields: tuple[FieldInfo, ...] = ()
    row_count = 0
    completeness: dict[str, Fraction] = {}
    duplicate_fraction = Fraction(0)
    parse_errors = 0
    flags = SensitivityFlags()
    granularity = "unknown"
    time_series = False
    primary_only = False
    similar = False

    if structure_class in ("structured", "semi_structured"):
        has_schema, fields = infer_schema(path, detected_format, sample_rows)
        samples = _sample_columns(path, detected_format, fields, has_schema, sample_rows)
        flags = scan_sensitivity(fields, samples, rulepack)
        granularity = guess_granularity(fields)
        time_series = any(f.inferred_type == "date" for f in fields)
        primary_only = _primary_types_only(path, detected_format, sample_rows)
        similar = _row_shapes_similar(path, detected_format, sample_rows)
        if structure_class == "structured":
            stats = quality_scan(path, detected_format, fields, has_schema)
            row_count = stats.row_count
            completeness = stats.field_completeness
            duplicate_fraction = stats.duplicate_row_fraction
            parse_errors = stats.parse_error_rows
        else:
            row_count = _semi_structured_row_count(path, detected_format, sample_rows)

    return DatasetProfile(
        paths=(str(path),),
        detected_format=detected_format,
        byte_size=byte_size,
        size_bucket_score=size_bucket(byte_size),
        structure_class=structure_class,
        has_schema=has_schema,
        schema=fields,
        row_count=row_count,
        field_completeness=completeness,
        duplicate_row_fraction=duplicate_fraction,
        parse_error_rows=parse_errors,
        granularity_guess=granularity,
        sensitivity_flags=flags,
        time_series=time_series,
        primary_types_only=primary_only,
        instances_similar=similar,
    )


def _semi_structured_row_count(path: Path, detected_format: str, sample_rows: int) -> int:
    if detected_format == "json":
        return len(_load_json(path, sample_rows))
    return len(_xml_records(path, sample_rows)[:sample_rows])


def auto_fill(profile: DatasetProfile, catalog: cat.Catalog) -> ResponseSet:
    """Convert a profile into auto-provenance answers; no evidence, no answer."""
    dataset_id = Path(profile.paths[0]).stem if profile.paths else "empty"
    answers: dict[str, Response] = {}

    def put(qid: str, value, note: str) -> None:
        if qid in catalog.questions:
            answers[qid] = Response(qid, value, "auto_profiler", note)

    if not profile.paths:
        return build_response_set(catalog, dataset_id, {})

    put(
        "data_layout.structure",
        LAYOUT_ANSWER[profile.structure_class],
        f"format {profile.detected_format}",
    )
    put(
        "data_volume.size",
        cat.size_bucket_label(profile.byte_size),
        f"{profile.byte_size} bytes",
    )
    put("format.file_format", profile.detected_format, "magic bytes and content shape")

    if profile.structure_class in ("structured", "semi_structured"):
        put(
            "format.schema",
            "Y" if profile.has_schema else "N",
            f"{len(profile.schema)} fields" if profile.has_schema else "no header or key structure",
        )
        put(
            "composition.primary_types",
            "Y" if profile.primary_types_only else "N",
            "sampled values are scalars" if profile.primary_types_only else "nested values found",
        )
        put(
            "composition.instances_similar",
            "Y" if profile.instances_similar else "N",
            "uniform record shape" if profile.instances_similar else "record shapes differ",
        )
        put(
            "statistical.time_series",
            "Y" if profile.time_series else "N",
            "date-typed field present" if profile.time_series else "no date-typed field",
        )
        flags = profile.sensitivity_flags
        put(
            "sensitivity.pii_free",
            "N" if flags.pii_columns else "Y",
            _flag_note(flags.pii_columns) or "no pii rule matched",
        )
        put(
            "sensitivity.protective_variables",
            "Y" if flags.protected_columns else "N",
            _flag_note(flags.protected_columns) or "no protected-attribute rule matched",
        )
        put(
            "sensitivity.confidential_free",
            "N" if flags.any_flagged() else "Y",
            "sensitive columns flagged" if flags.any_flagged() else "no sensitivity rule matched",
        )

    if profile.granularity_guess != "unknown":
        put(
            "granularity.aggregate",
            "Y" if profile.granularity_guess == "aggregate" else "N",
            f"column names suggest {profile.granularity_guess} records",
        )

    if profile.structure_class == "structured" and profile.row_count:
        complete = all(c == 1 for c in profile.field_completeness.values())
        put(
            "quality.fields_complete",
            "Y" if complete else "N",
            "no missing cells" if complete else "missing cells found",
        )
        put(
            "quality.duplicates",
            "Y" if profile.duplicate_row_fraction > 0 else "N",
            f"duplicate row fraction {profile.duplicate_row_fraction}",
        )

    return build_response_set(catalog, dataset_id, answers)


def _flag_note(matches: tuple[ColumnMatch, ...]) -> str:
    return ", ".join(f"{m.column} ({'; '.join(m.rule_ids)})" for m in matches)


def profile_to_document(profile: DatasetProfile) -> dict:
    """Plain-data view of a profile for machine serialization."""
    from .numbers import to_jsonable

    return {
        "paths": list(profile.paths),
        "detected_format": profile.detected_format,
        "byte_size": profile.byte_size,
        "size_bucket_score": to_jsonable(profile.size_bucket_score),
        "structure_class": profile.structure_class,
        "has_schema": profile.has_schema,
        "schema": [
            {"name": f.name, "inferred_type": f.inferred_type} for f in profile.schema
        ],
        "row_count": profile.row_count,
        "field_completeness": {
            name: to_jsonable(value)
            for name, value in profile.field_completeness.items()
        },
        "duplicate_row_fraction": to_jsonable(profile.duplicate_row_fraction),
        "parse_error_rows": profile.parse_error_rows,
        "granularity_guess": profile.granularity_guess,
        "sensitivity_flags": {
            kind: [
                {"column": m.column, "rule_ids": list(m.rule_ids), "evidence": m.evidence}
                for m in getattr(profile.sensitivity_flags, kind)
            ]
            for kind in (
                "pii_columns",
                "protected_columns",
                "financial_columns",
                "health_columns",
            )
        },
        "time_series": profile.time_series,
        "primary_types_only": profile.primary_types_only,
        "instances_similar": profile.instances_similar,
    }
