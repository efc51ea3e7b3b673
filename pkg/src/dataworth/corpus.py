"""Corpus study tooling: descriptor ingest, distributions, rank priors.

A descriptor file records one dataset's observed dimension values (format,
schema flag, PII flag, level, ...). Ingesting many descriptors gives exact
value distributions per dimension; sorting a distribution by frequency gives
an ordinal rank prior, optionally overridden by hand where popularity is a
bad proxy for worth (small files are common, yet larger data is preferred).
A prior converts to a draft score rule by spacing scores evenly from 1 down
to 0 along the ranking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import yaml

from .catalog import ScoreRule
from .errors import InputError, ParseFailure

DESCRIPTOR_SUFFIXES = (".yaml", ".yml")


@dataclass(frozen=True)
class DatasetDescriptor:
    id: str
    source: str  # e.g. kaggle_dump, uci_dump, profiled
    facet_values: dict[str, str]


@dataclass(frozen=True)
class IngestError:
    path: str
    message: str


@dataclass(frozen=True)
class Corpus:
    descriptors: dict[str, DatasetDescriptor]
    errors: tuple[IngestError, ...] = ()

    @property
    def size(self) -> int:
        return len(self.descriptors)

    def dimensions(self) -> list[str]:
        names = {d for desc in self.descriptors.values() for d in desc.facet_values}
        return sorted(names)


@dataclass(frozen=True)
class DistributionRow:
    dimension: str
    counts: dict[str, int]  # ordered by descending count, ties by label
    observed: int  # descriptors exposing the dimension
    missing: int  # descriptors without it

    def __post_init__(self):
        if sum(self.counts.values()) != self.observed:
            raise InputError(f"{self.dimension}: counts do not sum to observed total")


@dataclass(frozen=True)
class DistributionTable:
    rows: dict[str, DistributionRow]
    corpus_size: int


@dataclass(frozen=True)
class RankPrior:
    dimension: str
    order: tuple[str, ...]  # decreasing preference
    provenance: str  # frequency_derived | manual_override


def load_descriptor(path: str | Path) -> DatasetDescriptor:
    """Parse one descriptor file: id, source, values mapping."""
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text())
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    except yaml.YAMLError as exc:
        raise ParseFailure(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseFailure(f"{path}: expected a mapping")
    dataset_id = doc.get("id")
    if not isinstance(dataset_id, str) or not dataset_id:
        raise ParseFailure(f"{path}: missing or empty id")
    values = doc.get("values")
    if not isinstance(values, dict):
        raise ParseFailure(f"{path}: values must be a mapping")
    facet_values: dict[str, str] = {}
    for dimension, value in values.items():
        if isinstance(value, (dict, list)):
            raise ParseFailure(f"{path}: value for {dimension!r} is not a scalar")
        facet_values[str(dimension)] = str(value)
    source = doc.get("source", "unknown")
    if not isinstance(source, str):
        raise ParseFailure(f"{path}: source must be a string")
    return DatasetDescriptor(dataset_id, source, facet_values)


def _expand(paths: list[str | Path]) -> list[Path]:
    files: list[Path] = []
    for entry in paths:
        entry = Path(entry)
        if entry.is_dir():
            files.extend(
                p
                for p in sorted(entry.rglob("*"))
                if p.is_file() and p.suffix.lower() in DESCRIPTOR_SUFFIXES
            )
        else:
            files.append(entry)
    return files


def ingest(paths: list[str | Path]) -> Corpus:
    """Load descriptors; malformed files are skipped and reported.

    A duplicate id is a hard error naming both files: silently keeping either
    record would corrupt every count downstream.
    """
    descriptors: dict[str, DatasetDescriptor] = {}
    origin: dict[str, Path] = {}
    errors: list[IngestError] = []
    for path in _expand(paths):
        try:
            descriptor = load_descriptor(path)
        except ParseFailure as exc:
            errors.append(IngestError(str(path), str(exc)))
            continue
        if descriptor.id in descriptors:
            raise InputError(
                f"duplicate descriptor id {descriptor.id!r} in "
                f"{origin[descriptor.id]} and {path}"
            )
        descriptors[descriptor.id] = descriptor
        origin[descriptor.id] = path
    return Corpus(descriptors, tuple(errors))


def distribution(corpus: Corpus, dimension: str) -> DistributionRow:
    """Exact value counts for one dimension across the corpus."""
    counts: dict[str, int] = {}
    observed = 0
    for descriptor in corpus.descriptors.values():
        value = descriptor.facet_values.get(dimension)
        if value is None:
            continue
        observed += 1
        counts[value] = counts.get(value, 0) + 1
    if not observed:
        raise InputError(f"dimension {dimension!r} not observed in the corpus")
    ordered = dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))
    return DistributionRow(dimension, ordered, observed, corpus.size - observed)


def distributions(corpus: Corpus) -> DistributionTable:
    return DistributionTable(
        {d: distribution(corpus, d) for d in corpus.dimensions()}, corpus.size
    )


def derive_rank_prior(
    row: DistributionRow, override: list[str] | None = None
) -> RankPrior:
    """Order values by descending frequency; ties fall back to label order.

    An override replaces the frequency order entirely and must be a
    permutation of the observed values, so the prior never invents or loses
    a value.
    """
    observed = set(row.counts)
    if override is not None:
        unknown = [v for v in override if v not in observed]
        if unknown:
            raise InputError(
                f"{row.dimension}: override lists unobserved values {unknown}"
            )
        missing = sorted(observed - set(override))
        if missing:
            raise InputError(
                f"{row.dimension}: override misses observed values {missing}"
            )
        if len(override) != len(set(override)):
            raise InputError(f"{row.dimension}: override repeats a value")
        return RankPrior(row.dimension, tuple(override), "manual_override")
    return RankPrior(row.dimension, tuple(row.counts), "frequency_derived")


def prior_to_scores(prior: RankPrior) -> ScoreRule:
    """Draft a score rule: evenly spaced scores from 1 down to 0 by rank."""
    k = len(prior.order)
    if k == 0:
        raise InputError(f"{prior.dimension}: empty prior")
    if k == 1:
        return ScoreRule(map={prior.order[0]: Fraction(1)})
    return ScoreRule(
        map={
            value: Fraction(k - 1 - position, k - 1)
            for position, value in enumerate(prior.order)
        }
    )


def save_distribution(table: DistributionTable, path: str | Path) -> None:
    """Write a delimited export (dimension, value, count) for external plotting."""
    lines = [f"# corpus_size\t{table.corpus_size}", "dimension\tvalue\tcount\tmissing"]
    for dimension in sorted(table.rows):
        row = table.rows[dimension]
        for value, count in row.counts.items():
            lines.append(f"{dimension}\t{value}\t{count}\t{row.missing}")
    Path(path).write_text("\n".join(lines) + "\n")


def distribution_to_document(table: DistributionTable) -> dict:
    return {
        "corpus_size": table.corpus_size,
        "dimensions": {
            dimension: {
                "counts": dict(row.counts),
                "observed": row.observed,
                "missing": row.missing,
            }
            for dimension, row in sorted(table.rows.items())
        },
    }
