"""Weighted aggregation of question scores into a data value.

total = sum of weight_i * score_i over answered questions. Two modes exist
and never mix: raw_sum (every weight is 1, totals range 0..n, the convention
of printed worked assessments) and normalized (weights sum to 1, totals range
0..1, optionally renormalizing over the answered subset when questions are
omitted). All arithmetic is exact (fractions), so replaying a printed score
column reproduces its sum digit for digit and what-if deltas are exact.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import yaml

from . import catalog as cat
from .assessment import Response, ResponseSet, ReplayTable, validate
from .errors import InputError, ParseFailure
from .numbers import exact_str, parse_exact, to_jsonable

NORMALIZED_SUM_TOLERANCE = Fraction(1, 10**9)


@dataclass(frozen=True)
class WeightProfile:
    mode: str  # raw_sum | normalized
    weights: dict[str, Fraction]
    renormalize_on_omission: bool = True

    def __post_init__(self):
        if self.mode not in ("raw_sum", "normalized"):
            raise InputError(f"unknown weight mode {self.mode!r}")
        for qid, alpha in self.weights.items():
            if alpha < 0:
                raise InputError(f"negative weight for {qid}")
            if self.mode == "raw_sum" and alpha != 1:
                raise InputError(f"raw_sum mode requires weight 1, got {qid}={alpha}")
        if self.mode == "normalized":
            total = sum(self.weights.values(), Fraction(0))
            if abs(total - 1) > NORMALIZED_SUM_TOLERANCE:
                raise InputError(
                    f"normalized weights must sum to 1, got {exact_str(total)}"
                )

    def weight(self, question_id: str) -> Fraction:
        return self.weights.get(question_id, Fraction(0))

    def fingerprint(self) -> str:
        payload = "|".join(
            [self.mode, str(self.renormalize_on_omission)]
            + [f"{qid}={exact_str(w)}" for qid, w in sorted(self.weights.items())]
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    @classmethod
    def raw_sum(cls, catalog: cat.Catalog) -> "WeightProfile":
        return cls("raw_sum", {qid: Fraction(1) for qid in catalog.questions})

    @classmethod
    def equal_normalized(
        cls, catalog: cat.Catalog, renormalize_on_omission: bool = True
    ) -> "WeightProfile":
        n = len(catalog.questions)
        return cls(
            "normalized",
            {qid: Fraction(1, n) for qid in catalog.questions},
            renormalize_on_omission,
        )


def load_weights(path: str | Path, catalog: cat.Catalog) -> WeightProfile:
    """Read a weight-profile file: mode plus either equal: true or weights{}."""
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text()) or {}
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    except yaml.YAMLError as exc:
        raise ParseFailure(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseFailure(f"{path}: expected a mapping at top level")
    mode = doc.get("mode", "raw_sum")
    renorm = bool(doc.get("renormalize_on_omission", True))
    if doc.get("equal"):
        if mode == "normalized":
            return WeightProfile.equal_normalized(catalog, renorm)
        return WeightProfile.raw_sum(catalog)
    raw = doc.get("weights")
    if raw is None:
        if mode == "raw_sum":
            return WeightProfile.raw_sum(catalog)
        return WeightProfile.equal_normalized(catalog, renorm)
    if not isinstance(raw, dict):
        raise ParseFailure(f"{path}: weights must be a mapping")
    weights: dict[str, Fraction] = {}
    for qid, value in raw.items():
        if qid not in catalog.questions:
            raise InputError(f"{path}: weight for unknown question {qid!r}")
        try:
            weights[qid] = parse_exact(value)
        except ValueError as exc:
            raise ParseFailure(f"{path}: weight {qid}: {exc}") from exc
    try:
        return WeightProfile(mode, weights, renorm)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def save_weights(profile: WeightProfile, path: str | Path) -> None:
    doc = {
        "mode": profile.mode,
        "renormalize_on_omission": profile.renormalize_on_omission,
        "weights": {qid: to_jsonable(w) for qid, w in sorted(profile.weights.items())},
    }
    Path(path).write_text(yaml.safe_dump(doc, sort_keys=False))


@dataclass(frozen=True)
class QuestionScore:
    question_id: str
    value: str | Fraction
    score: Fraction
    weight: Fraction
    contribution: Fraction
    provenance: str


@dataclass(frozen=True)
class ValueReport:
    dataset_id: str
    catalog_version: str
    mode: str
    renormalize_on_omission: bool
    profile_fingerprint: str
    per_question: dict[str, QuestionScore]
    facet_subtotals: dict[str, Fraction]
    total: Fraction
    answered_count: int
    omitted_count: int
    dont_know_count: int
    not_applicable_count: int


@dataclass(frozen=True)
class ComparisonRow:
    question_id: str
    values: dict[str, str | Fraction | None]
    scores: dict[str, Fraction | None]
    differs: bool


@dataclass(frozen=True)
class ComparisonReport:
    ranking: tuple[tuple[str, Fraction], ...]  # (dataset_id, total), descending
    winner: str
    rows: tuple[ComparisonRow, ...]
    mode: str


@dataclass(frozen=True)
class WhatIfChange:
    question_id: str
    old_value: str | Fraction
    new_value: str | Fraction
    old_score: Fraction
    new_score: Fraction
    weight: Fraction
    delta: Fraction


@dataclass(frozen=True)
class DeltaReport:
    dataset_id: str
    base_total: Fraction
    new_total: Fraction
    changes: tuple[WhatIfChange, ...]

    @property
    def delta_total(self) -> Fraction:
        return self.new_total - self.base_total


@dataclass(frozen=True)
class Discrepancy:
    question_id: str
    question_text: str
    response: str
    printed_score: Fraction
    catalog_score: Fraction


@dataclass(frozen=True)
class ReplayVerdict:
    dataset_id: str
    engine_sum: Fraction
    printed_total: Fraction
    match: bool
    row_count: int
    discrepancies: tuple[Discrepancy, ...]


def score_response(question: cat.QuestionSpec, response: Response) -> Fraction:
    """Score one response: rule lookup, sentinel -> 0, numeric passthrough."""
    value = response.value
    if value in cat.SENTINELS:
        return Fraction(0)
    if isinstance(value, str) and value in question.score_rule.map:
        return question.score_rule.map[value]
    if question.score_rule.numeric_passthrough and not isinstance(value, str):
        number = parse_exact(value)
        if not 0 <= number <= 1:
            raise InputError(
                f"{question.id}: numeric value {exact_str(number)} out of [0, 1]"
            )
        return number
    raise InputError(f"{question.id}: value {value!r} not admissible")


def compute_value(
    catalog: cat.Catalog, response_set: ResponseSet, profile: WeightProfile
) -> ValueReport:
    """Aggregate scores into the dataset's value report.

    Omitted questions contribute nothing; in normalized mode their weight is
    redistributed over the answered subset when renormalize_on_omission is on.
    """
    report = validate(catalog, response_set)
    if not report.valid:
        details = "; ".join(f"{v.question_id}: {v.message}" for v in report.violations)
        raise InputError(f"invalid response set: {details}")

    answered = [qid for qid in catalog.question_order() if qid in response_set.responses]
    weight_of = {qid: profile.weight(qid) for qid in answered}
    if profile.mode == "normalized" and profile.renormalize_on_omission:
        answered_weight = sum(weight_of.values(), Fraction(0))
        if answered_weight > 0:
            weight_of = {
                qid: alpha / answered_weight for qid, alpha in weight_of.items()
            }

    per_question: dict[str, QuestionScore] = {}
    facet_subtotals: dict[str, Fraction] = {f.id: Fraction(0) for f in catalog.facets}
    total = Fraction(0)
    dont_know = not_applicable = 0
    for qid in answered:
        response = response_set.responses[qid]
        spec = catalog.questions[qid]
        score = score_response(spec, response)
        weight = weight_of[qid]
        contribution = weight * score
        per_question[qid] = QuestionScore(
            qid, response.value, score, weight, contribution, response.provenance
        )
        facet_subtotals[spec.facet_id] += contribution
        total += contribution
        if response.value == cat.DONT_KNOW:
            dont_know += 1
        elif response.value == cat.NOT_APPLICABLE:
            not_applicable += 1
    return ValueReport(
        dataset_id=response_set.dataset_id,
        catalog_version=catalog.version,
        mode=profile.mode,
        renormalize_on_omission=profile.renormalize_on_omission,
        profile_fingerprint=profile.fingerprint(),
        per_question=per_question,
        facet_subtotals=facet_subtotals,
        total=total,
        answered_count=len(answered),
        omitted_count=len(response_set.omitted),
        dont_know_count=dont_know,
        not_applicable_count=not_applicable,
    )


def compare(reports: list[ValueReport]) -> ComparisonReport:
    """Rank reports by total, descending; ties break by dataset id."""
    if len(reports) < 2:
        raise InputError("compare needs at least two reports")
    versions = {r.catalog_version for r in reports}
    if len(versions) > 1:
        raise InputError(f"mixed catalog versions: {sorted(versions)}")
    profiles = {r.profile_fingerprint for r in reports}
    if len(profiles) > 1:
        raise InputError("mixed weight profiles; rescore with one profile")
    ids = [r.dataset_id for r in reports]
    if len(set(ids)) != len(ids):
        raise InputError(f"duplicate dataset ids: {ids}")
    ranking = tuple(
        (r.dataset_id, r.total)
        for r in sorted(reports, key=lambda r: (-r.total, r.dataset_id))
    )
    question_ids: list[str] = []
    for r in reports:
        for qid in r.per_question:
            if qid not in question_ids:
                question_ids.append(qid)
    rows = []
    for qid in question_ids:
        values: dict[str, str | Fraction | None] = {}
        scores: dict[str, Fraction | None] = {}
        for r in reports:
            qs = r.per_question.get(qid)
            values[r.dataset_id] = qs.value if qs else None
            scores[r.dataset_id] = qs.score if qs else None
        distinct = {
            exact_str(s) if s is not None else None for s in scores.values()
        }
        rows.append(ComparisonRow(qid, values, scores, differs=len(distinct) > 1))
    return ComparisonReport(ranking, ranking[0][0], tuple(rows), reports[0].mode)


def what_if(
    catalog: cat.Catalog,
    report: ValueReport,
    changes: list[tuple[str, str | Fraction]],
) -> DeltaReport:
    """Preview the effect of changing answered responses.

    Each delta is weight * (new score - old score); weights stay as computed
    in the base report, so deltas are additive and exact. Only questions the
    report already scores can change here; answering a new question would
    reshape normalized weights rather than produce a local delta.
    """
    out: list[WhatIfChange] = []
    seen: set[str] = set()
    new_total = report.total
    for qid, new_value in changes:
        spec = cat.lookup(catalog, qid)
        qs = report.per_question.get(qid)
        if qs is None:
            raise InputError(f"{qid}: not answered in the base report")
        if qid in seen:
            raise InputError(f"{qid}: changed twice in one what-if")
        seen.add(qid)
        if isinstance(new_value, str) and spec.kind in (
            "numeric_unit",
            "categorical_or_numeric",
        ) and new_value not in spec.allowed_values and new_value not in cat.SENTINELS:
            try:
                new_value = parse_exact(new_value)
            except ValueError:
                pass
        if not spec.admits(new_value):
            raise InputError(f"{qid}: value {new_value!r} not admissible")
        new_score = score_response(spec, Response(qid, new_value))
        delta = qs.weight * (new_score - qs.score)
        out.append(
            WhatIfChange(qid, qs.value, new_value, qs.score, new_score, qs.weight, delta)
        )
        new_total += delta
    return DeltaReport(report.dataset_id, report.total, new_total, tuple(out))


def replay_check(table: ReplayTable, catalog: cat.Catalog | None = None) -> ReplayVerdict:
    """Sum a replay table's printed row scores and compare to its printed total.

    The engine sum trusts the rows. Rows whose printed score disagrees with
    the catalog's rule for the same response are reported as discrepancies;
    they are data about the source table, not failures.
    """
    if catalog is None:
        catalog = cat.with_examples_pack()
    engine_sum = Fraction(0)
    discrepancies = []
    for row in table.rows:
        engine_sum += row.printed_score
        spec = catalog.questions.get(row.question_id)
        if spec is None:
            continue
        catalog_score = score_response(spec, Response(row.question_id, row.value))
        if catalog_score != row.printed_score:
            discrepancies.append(
                Discrepancy(
                    row.question_id,
                    row.question_text,
                    row.raw_response,
                    row.printed_score,
                    catalog_score,
                )
            )
    return ReplayVerdict(
        dataset_id=table.dataset_id,
        engine_sum=engine_sum,
        printed_total=table.printed_total,
        match=engine_sum == table.printed_total,
        row_count=len(table.rows),
        discrepancies=tuple(discrepancies),
    )
