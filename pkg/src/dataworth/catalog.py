"""Canonical questionnaire catalog: facets, questions, score rules.

The built-in catalog holds 17 facets and 74 questions. Binary questions score
Y=1/N=0 unless the rule is explicitly reversed; DontKnow and NotApplicable
are always admissible and always score 0. A small "examples" extension pack
carries four extra questions that appear in worked assessments but are not
part of the canonical set; it is off by default.
"""

from __future__ import annotations

import difflib
import hashlib
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import yaml

from .errors import InputError, ParseFailure
from .numbers import parse_exact, to_jsonable

CATALOG_VERSION = "1.0.0"

DONT_KNOW = "DontKnow"
NOT_APPLICABLE = "NotApplicable"
SENTINELS = (DONT_KNOW, NOT_APPLICABLE)

KINDS = ("binary", "categorical", "numeric_unit", "categorical_or_numeric")


@dataclass(frozen=True)
class ScoreRule:
    """Maps response labels to scores in [0, 1].

    numeric_passthrough lets a numeric answer in [0, 1] become its own score.
    default_binary marks the plain Y=1/N=0 rule so reversed questions are
    distinguishable in serialized form.
    """

    map: dict[str, Fraction] = field(default_factory=dict)
    numeric_passthrough: bool = False
    default_binary: bool = False

    def score_label(self, label: str) -> Fraction:
        if label in SENTINELS:
            return Fraction(0)
        if label not in self.map:
            raise InputError(f"label {label!r} has no score")
        return self.map[label]


@dataclass(frozen=True)
class QuestionSpec:
    id: str
    prompt: str
    kind: str
    allowed_values: tuple[str, ...]
    score_rule: ScoreRule
    dont_know_allowed: bool = True
    exclusivity_group: str | None = None
    applicability: str | None = None
    confidence: str = "high"
    canonical: bool = True

    @property
    def facet_id(self) -> str:
        return self.id.split(".", 1)[0]

    def admits(self, value: object) -> bool:
        """Whether a raw answer value is admissible for this question."""
        if value in SENTINELS:
            return self.dont_know_allowed or value == NOT_APPLICABLE
        if isinstance(value, str) and value in self.allowed_values:
            return self.kind != "numeric_unit"
        if self.kind in ("numeric_unit", "categorical_or_numeric"):
            try:
                number = parse_exact(value)  # type: ignore[arg-type]
            except ValueError:
                return False
            return 0 <= number <= 1
        return False


@dataclass(frozen=True)
class FacetSpec:
    id: str
    title: str
    description: str
    question_ids: tuple[str, ...]


@dataclass(frozen=True)
class Catalog:
    version: str
    facets: tuple[FacetSpec, ...]
    questions: dict[str, QuestionSpec]
    checksum: str
    extension_ids: tuple[str, ...] = ()

    def facet(self, facet_id: str) -> FacetSpec:
        for f in self.facets:
            if f.id == facet_id:
                return f
        raise InputError(f"unknown facet {facet_id!r}")

    def question_order(self) -> list[str]:
        return [qid for f in self.facets for qid in f.question_ids]


class QuestionNotFound(InputError):
    def __init__(self, question_id: str, suggestion: str | None):
        self.question_id = question_id
        self.suggestion = suggestion
        hint = f"; closest match: {suggestion}" if suggestion else ""
        super().__init__(f"unknown question {question_id!r}{hint}")


_YES_NO = ("Y", "N")
_DEFAULT_BINARY = ScoreRule(
    map={"Y": Fraction(1), "N": Fraction(0)}, default_binary=True
)
_REVERSED_BINARY = ScoreRule(map={"Y": Fraction(0), "N": Fraction(1)})


def _binary(qid: str, prompt: str, reverse: bool = False, **kw) -> QuestionSpec:
    rule = _REVERSED_BINARY if reverse else _DEFAULT_BINARY
    return QuestionSpec(qid, prompt, "binary", _YES_NO, rule, **kw)


def _categorical(qid: str, prompt: str, scores: dict[str, str], **kw) -> QuestionSpec:
    rule = ScoreRule(map={k: parse_exact(v) for k, v in scores.items()})
    return QuestionSpec(qid, prompt, "categorical", tuple(scores), rule, **kw)


def _cat_or_num(qid: str, prompt: str, scores: dict[str, str], **kw) -> QuestionSpec:
    rule = ScoreRule(
        map={k: parse_exact(v) for k, v in scores.items()}, numeric_passthrough=True
    )
    return QuestionSpec(qid, prompt, "categorical_or_numeric", tuple(scores), rule, **kw)


_CANONICAL_FACETS: list[tuple[str, str, str, list[QuestionSpec]]] = [
    (
        "data_layout",
        "Data Layout",
        "Whether the data has well defined boundaries identifying points, fields "
        "and instances (structured), a structure whose contents may be free-form "
        "(semi-structured, e.g. XML or HTML), or no usable boundaries at all "
        "(unstructured blobs of text, video, audio or images).",
        [
            _categorical(
                "data_layout.structure",
                "What is the data structure?",
                {"Structured": "1", "Semi-structured": "0.5", "Unstructured": "0.25"},
            )
        ],
    ),
    (
        "data_age",
        "Data Age",
        "More recent data is generally better than less recent data; some data "
        "outdates rapidly while data that stays relevant longer is more useful.",
        [
            _categorical(
                "data_age.currency",
                "How current is the data?",
                {"Latest": "1", "Recent": "0.75", "Old": "0.25", NOT_APPLICABLE: "0"},
            ),
            _binary(
                "data_age.less_useful_with_age",
                "Does the data become less useful with age?",
                reverse=True,
            ),
            _binary("data_age.gains_value_with_age", "Does the data gain value with age?"),
            _binary(
                "data_age.later_instance_known",
                "Is there a known later instance of the data?",
                reverse=True,
            ),
            _categorical(
                "data_age.update_frequency",
                "How frequently does the data get outdated/updated?",
                {
                    "Daily": "0.25",
                    "Weekly": "0.5",
                    "Monthly": "0.75",
                    "Yearly": "1.0",
                    NOT_APPLICABLE: "0",
                    DONT_KNOW: "0",
                },
            ),
        ],
    ),
    (
        "data_volume",
        "Data Volume",
        "The size of the data set, which bears on storage and processing costs. "
        "Modulo an upper bound, more data is generally better than less.",
        [
            _categorical(
                "data_volume.size",
                "What is the data size?",
                {
                    "LessThan500MB": "0.5",
                    "From500MBTo10GB": "0.75",
                    "From10GBTo100GB": "1.0",
                    "MoreThan100GB": "0.5",
                },
            )
        ],
    ),
    (
        "composition",
        "Composition of the Data",
        "The level of homogeneity in the data.",
        [
            _binary(
                "composition.primary_types",
                "Are the data point instances primary data type?",
            ),
            _binary("composition.instances_similar", "Are all instances similar?"),
        ],
    ),
    (
        "format",
        "Format of the Data",
        "How the information is stored. Widely used formats enjoy better "
        "interoperability and tooling; a schema, relational form, standards "
        "compliance and openness all make the data easier to operate on.",
        [
            _categorical(
                "format.file_format",
                "What is the format of the data set file?",
                {
                    "csv": "1",
                    "pdf": "0",
                    "tsv": "1",
                    "gif_jpg": "0",
                    "xml": "1",
                    "json": "1",
                    "other": "0",
                },
            ),
            _binary("format.schema", "Does it have a schema?"),
            _binary(
                "format.relational_export",
                "Is it an export or query result of relational data?",
            ),
            _binary("format.standard_compliant", "Does it adhere to a standard?"),
            _binary("format.proprietary_open", "If in proprietary format, is it open?"),
            _binary("format.normalized", "Is it in normalized form?"),
        ],
    ),
    (
        "data_usage",
        "Data Usage",
        "Ease of use as the respondent sees it; easier data is preferred to "
        "data that is more complex to put to work.",
        [
            _categorical(
                "data_usage.ease",
                "How easy is it to utilise the data?",
                {"Simple": "1", "Moderate": "0.6", "Difficult": "0.3", "Complex": "0"},
            )
        ],
    ),
    (
        "sensitivity",
        "Data Sensitivity",
        "Sensitive content raises exposure risk and protection cost. When the "
        "same task can be done with non-sensitive data, the latter is preferred.",
        [
            _binary(
                "sensitivity.confidential_free",
                "Is it free of confidential information?",
            ),
            _binary(
                "sensitivity.pii_free",
                "Is it free of personal identifiable information?",
            ),
            _binary(
                "sensitivity.mandatory_retention_free",
                "Is it free of information to be retained for mandatory purposes?",
            ),
            _binary(
                "sensitivity.financial_free", "Is it free of revenue or financial data?"
            ),
            _binary(
                "sensitivity.medical",
                "Does it have medical data or health data?",
                reverse=True,
            ),
            _binary(
                "sensitivity.protective_variables",
                "Does it have protective variables?",
                reverse=True,
            ),
        ],
    ),
    (
        "statistical",
        "Statistical Properties",
        "Suitability for common analysis tasks, an intermediate step on the "
        "path from data to insight.",
        [
            _binary(
                "statistical.classification", "Is it suitable for classification models?"
            ),
            _binary(
                "statistical.linear_regression",
                "Is it suitable for linear regression models?",
            ),
            _binary("statistical.clustering", "Is it suitable for clustering models?"),
            _binary(
                "statistical.used_in_ml", "Has it been used in ML algorithms already?"
            ),
            _binary(
                "statistical.sampling_applied",
                "Was any sampling applied on the data to get this sample?",
            ),
            _binary("statistical.time_series", "Is it time-series data?"),
            _binary("statistical.bivariate", "Is it suitable for bivariate analysis?"),
            _binary(
                "statistical.multivariate", "Is it suitable for multivariate analysis?"
            ),
        ],
    ),
    (
        "granularity",
        "Data Granularity",
        "Aggregate information is generally less useful than detailed, "
        "instance-level information.",
        [
            _binary(
                "granularity.aggregate",
                "Is it aggregate or summary information?",
                reverse=True,
            )
        ],
    ),
    (
        "frequency_of_use",
        "Frequency of Use",
        "Current frequency of use is a rough indicator of future use or disuse.",
        [
            _categorical(
                "frequency_of_use.last_used",
                "When was the data last used?",
                {
                    "ThisMonth": "1",
                    "ThisYear": "0.75",
                    "InLast5Years": "0.5",
                    "MoreThan5YearsAgo": "0",
                },
            ),
            _binary("frequency_of_use.known_future_use", "Is there a known future use?"),
        ],
    ),
    (
        "quality",
        "Data Quality",
        "Application-independent quality of the data set as defined: "
        "completeness, errors, duplication, accuracy, precision and recall.",
        [
            _binary("quality.fields_complete", "Are all the fields complete?"),
            _binary("quality.error_free", "Is it error-free?"),
            _binary(
                "quality.missing_instances",
                "Are there known missing instances?",
                reverse=True,
            ),
            _binary(
                "quality.fills_missing_values",
                "Does it fill the missing values in an existing data set?",
            ),
            _binary(
                "quality.complete_for_purpose",
                "Is it complete, with respect to the purpose it defines?",
            ),
            _binary(
                "quality.duplicates", "Is it known to have duplicates?", reverse=True
            ),
            _binary(
                "quality.complements_existing",
                "Does it complement or supplement an existing data set?",
            ),
            _binary("quality.accurate", "Is the data accurate?"),
            _cat_or_num(
                "quality.precision",
                "What is the precision?",
                {"High": "1", "Medium": "0.5", "Low": "0"},
            ),
            _cat_or_num(
                "quality.recall",
                "What is the recall?",
                {"High": "1", "Medium": "0.5", "Low": "0"},
            ),
            _binary(
                "quality.consistency", "Is the data consistent within the data set?"
            ),
            _binary("quality.noise", "Does the data have noise?", reverse=True),
        ],
    ),
    (
        "velocity",
        "Data Velocity",
        "The rate at which data arrives, which shapes store design and "
        "scalability plans; streaming demands computational resources.",
        [
            _categorical(
                "velocity.generation_rate",
                "How rapidly can it be said to be generated?",
                {
                    "VeryFast": "0.5",
                    "Fast": "0.75",
                    "Medium": "1.0",
                    "NotSignificant": "1.0",
                },
            ),
            _binary("velocity.streaming", "Is it streaming data?", confidence="low"),
        ],
    ),
    (
        "sourcing",
        "Data Sourcing",
        "Where the data came from: bears on generation cost, availability to "
        "others, alternates, and how straightforward collection is.",
        [
            _binary(
                "sourcing.accessible_by_all",
                "Can this data be easily accessed by all?",
                reverse=True,
            ),
            _categorical(
                "sourcing.obtained",
                "How was the data obtained?",
                {
                    "Survey": "1",
                    "CustomerFeedback": "1",
                    "Transactional": "0.5",
                    "WebCrawler": "0",
                    "Licensing": "0.5",
                    "OutrightPurchase": "0.75",
                    "Others": "0",
                },
            ),
            _categorical(
                "sourcing.aggregation",
                "Is the data aggregated from many sources or from single source?",
                {"MultipleSources": "0.5", "SingleSource": "0.5"},
                applicability="No preferred direction is established; both values "
                "score 0.5.",
            ),
            _binary(
                "sourcing.easy_for_me",
                "Is this data easy for me to get, difficult for others?",
            ),
            _binary("sourcing.enterprise_generated", "Is this enterprise-generated?"),
            _binary("sourcing.public", "Is this publicly available?", reverse=True),
            _binary(
                "sourcing.machine_generated",
                "Is this data machine generated?",
                reverse=True,
            ),
            _binary(
                "sourcing.alternates_known",
                "Are there known alternates for this data set?",
                reverse=True,
            ),
        ],
    ),
    (
        "transformation",
        "Transformation on the Data",
        "Prior transformations indicate processing toward consumability; "
        "anonymized data can be shared more readily and is preferred absent "
        "context, while encryption hinders direct use.",
        [
            _binary(
                "transformation.transformed",
                "Is it known to have had data transformations?",
            ),
            _binary("transformation.encrypted", "Is it encrypted data?", reverse=True),
            _binary("transformation.anonymized", "Is it anonymized data?"),
        ],
    ),
    (
        "processing",
        "Data Processing",
        "Tools to read and analyse the data make it more useful than otherwise.",
        [
            _binary(
                "processing.cleansing_tools",
                "Are there tools or programs to cleanse the data?",
            ),
            _binary(
                "processing.processing_tools",
                "Are there tools or programs to process the data in the current format?",
            ),
        ],
    ),
    (
        "enterprise",
        "Enterprise Aspects",
        "How the data is perceived in the enterprise in a general context.",
        [
            _binary("enterprise.making_money", "Is the data already making money?"),
            _binary(
                "enterprise.improves_efficiency",
                "Will it improve the efficiency of an existing application or "
                "business process?",
            ),
            _binary(
                "enterprise.new_channel",
                "Does it introduce a new channel to reach to customers?",
            ),
            _binary(
                "enterprise.complements_application",
                "Does it complement an existing application?",
            ),
            _binary("enterprise.increases_reach", "Does it increase customer reach?"),
            _categorical(
                "enterprise.business_process",
                "Which parts of the business process does it contribute to?",
                {
                    "Sales": "1",
                    "Marketing": "1",
                    "HR": "1",
                    "Operations": "1",
                    "Finance": "1",
                    "Accounting": "1",
                    "Payroll": "1",
                    "Others": "0",
                },
            ),
            _categorical(
                "enterprise.hierarchy",
                "At which hierarchy in the organization is the data used?",
                {
                    "Executive": "1",
                    "MiddleManagement": "0.75",
                    "Others": "0.5",
                    "Multiple": "1",
                },
            ),
        ],
    ),
    (
        "legal",
        "Legal and Access Aspects",
        "Unconditionally available data is preferred to data under legal "
        "controls or other restrictions; easy access means few procedures "
        "stand between the user and the data.",
        [
            _binary(
                "legal.restriction_free",
                "Is this data free of any legal restrictions in usage?",
            ),
            _binary(
                "legal.contract_acquired",
                "Was this data acquired as part of some contract?",
                reverse=True,
            ),
            _binary(
                "legal.contractual_obligations",
                "Are there any contractual obligations on the data?",
                reverse=True,
            ),
            _binary(
                "legal.consent_obtained",
                "If pertaining to 'information about people', was there consent to use?",
            ),
            _binary("legal.license", "Is it governed by some license?", reverse=True),
            _binary(
                "legal.export_restrictions", "Are there export restrictions?", reverse=True
            ),
            _binary("legal.easy_access", "Is the data easy to access?"),
        ],
    ),
]

# Extra questions seen only in worked assessments, not in the canonical set.
# Off by default; replay loading activates them. Score rules are the unique
# assignments consistent with every observed scoring of these rows.
EXAMPLES_PACK_FACETS: list[tuple[str, str, str]] = [
    ("data_updation", "Data Updation", "Whether the data set receives updates."),
]
EXAMPLES_PACK_QUESTIONS: list[QuestionSpec] = [
    replace(
        _binary(
            "data_volume.expensive_to_store",
            "Is it expensive to store this data?",
            reverse=True,
        ),
        canonical=False,
    ),
    replace(
        _binary(
            "data_updation.frequent", "Is the data updated frequently?", reverse=True
        ),
        canonical=False,
    ),
    replace(
        _binary(
            "statistical.uniform_distribution",
            "Is data uniformly distributed over different fields?",
            reverse=True,
        ),
        canonical=False,
    ),
    replace(
        QuestionSpec(
            "legal.restrictions_on_use",
            "Are there legal restrictions on using this data?",
            "binary",
            _YES_NO,
            ScoreRule(map={"Y": Fraction(0), "N": Fraction(0)}),
            applicability="Observed scores express no preference; both values score 0.",
        ),
        canonical=False,
    ),
]


def _build_canonical() -> tuple[tuple[FacetSpec, ...], dict[str, QuestionSpec]]:
    facets = []
    questions: dict[str, QuestionSpec] = {}
    for fid, title, description, qs in _CANONICAL_FACETS:
        facets.append(FacetSpec(fid, title, description, tuple(q.id for q in qs)))
        for q in qs:
            if q.id in questions:
                raise InputError(f"duplicate canonical question id {q.id}")
            questions[q.id] = q
    return tuple(facets), questions


def canonical_checksum() -> str:
    facets, questions = _build_canonical()
    probe = Catalog(CATALOG_VERSION, facets, questions, checksum="")
    return hashlib.sha256(serialize(probe).encode()).hexdigest()


def load_canonical() -> Catalog:
    """The full built-in catalog: 17 facets, every question and score map."""
    facets, questions = _build_canonical()
    return Catalog(CATALOG_VERSION, facets, questions, checksum=canonical_checksum())


def extend(catalog: Catalog, facets: list[FacetSpec], questions: list[QuestionSpec]) -> Catalog:
    """Merge extension questions into a catalog.

    Extension ids must not shadow existing ones; new facets are appended and
    new questions attach to their facet by id prefix.
    """
    merged_questions = dict(catalog.questions)
    facet_list = list(catalog.facets)
    facet_index = {f.id: i for i, f in enumerate(facet_list)}
    for f in facets:
        if f.id not in facet_index:
            facet_index[f.id] = len(facet_list)
            facet_list.append(FacetSpec(f.id, f.title, f.description, ()))
    extension_ids = list(catalog.extension_ids)
    for q in questions:
        if q.id in merged_questions:
            raise InputError(
                f"duplicate question id {q.id!r}: defined by the loaded catalog "
                "and again by the extension"
            )
        q = replace(q, canonical=False)
        merged_questions[q.id] = q
        fid = q.facet_id
        if fid not in facet_index:
            facet_index[fid] = len(facet_list)
            facet_list.append(FacetSpec(fid, fid, "", ()))
        i = facet_index[fid]
        facet_list[i] = replace(
            facet_list[i], question_ids=facet_list[i].question_ids + (q.id,)
        )
        extension_ids.append(q.id)
    return Catalog(
        catalog.version,
        tuple(facet_list),
        merged_questions,
        catalog.checksum,
        tuple(extension_ids),
    )


def with_examples_pack(catalog: Catalog | None = None) -> Catalog:
    base = catalog if catalog is not None else load_canonical()
    pack_facets = [FacetSpec(fid, t, d, ()) for fid, t, d in EXAMPLES_PACK_FACETS]
    return extend(base, pack_facets, EXAMPLES_PACK_QUESTIONS)


def save_examples_pack(path: str | Path) -> None:
    """Export the built-in extras as an extension file.

    Pointing the catalog override at the exported file makes answers saved
    from worked-assessment replays scorable by the command-line tools.
    """
    doc = {
        "facets": [
            {"id": fid, "title": title, "description": description}
            for fid, title, description in EXAMPLES_PACK_FACETS
        ],
        "questions": [_question_to_doc(q) for q in EXAMPLES_PACK_QUESTIONS],
    }
    Path(path).write_text(yaml.safe_dump(doc, sort_keys=False, allow_unicode=True))


def lookup(catalog: Catalog, question_id: str) -> QuestionSpec:
    """Resolve a question id, suggesting the nearest id when unknown."""
    spec = catalog.questions.get(question_id)
    if spec is not None:
        return spec
    close = difflib.get_close_matches(question_id, catalog.questions, n=1)
    raise QuestionNotFound(question_id, close[0] if close else None)


def _question_to_doc(q: QuestionSpec) -> dict:
    doc: dict = {
        "id": q.id,
        "prompt": q.prompt,
        "kind": q.kind,
        "values": list(q.allowed_values),
        "scores": {label: to_jsonable(s) for label, s in q.score_rule.map.items()},
        "canonical": q.canonical,
    }
    if q.score_rule.numeric_passthrough:
        doc["numeric_passthrough"] = True
    if q.score_rule.default_binary:
        doc["default_binary"] = True
    if not q.dont_know_allowed:
        doc["dont_know_allowed"] = False
    if q.exclusivity_group:
        doc["exclusivity_group"] = q.exclusivity_group
    if q.applicability:
        doc["applicability"] = q.applicability
    if q.confidence != "high":
        doc["confidence"] = q.confidence
    return doc


def to_document(catalog: Catalog) -> dict:
    """Plain-data form of a catalog, shared by the file format and the API."""
    return {
        "version": catalog.version,
        "checksum": catalog.checksum,
        "facets": [
            {
                "id": f.id,
                "title": f.title,
                "description": f.description,
                "questions": list(f.question_ids),
            }
            for f in catalog.facets
        ],
        "questions": [
            _question_to_doc(catalog.questions[qid])
            for f in catalog.facets
            for qid in f.question_ids
        ],
    }


def serialize(catalog: Catalog) -> str:
    return yaml.safe_dump(to_document(catalog), sort_keys=False, allow_unicode=True)


def _question_from_doc(doc: dict, source: str) -> QuestionSpec:
    for key in ("id", "prompt", "kind", "values", "scores"):
        if key not in doc:
            raise ParseFailure(f"{source}: question missing field {key!r}")
    if doc["kind"] not in KINDS:
        raise ParseFailure(f"{source}: question {doc['id']}: unknown kind {doc['kind']!r}")
    try:
        scores = {k: parse_exact(v) for k, v in doc["scores"].items()}
    except ValueError as exc:
        raise ParseFailure(f"{source}: question {doc['id']}: {exc}") from exc
    values = tuple(doc["values"])
    for label in values:
        if label not in scores:
            raise ParseFailure(
                f"{source}: question {doc['id']}: value {label!r} has no score"
            )
    for label, s in scores.items():
        if not 0 <= s <= 1:
            raise ParseFailure(
                f"{source}: question {doc['id']}: score for {label!r} outside [0, 1]"
            )
    if doc["kind"] == "binary" and set(values) != {"Y", "N"}:
        raise ParseFailure(
            f"{source}: question {doc['id']}: binary values must be Y and N"
        )
    rule = ScoreRule(
        map=scores,
        numeric_passthrough=bool(doc.get("numeric_passthrough"))
        or doc["kind"] in ("numeric_unit", "categorical_or_numeric"),
        default_binary=bool(doc.get("default_binary")),
    )
    return QuestionSpec(
        id=doc["id"],
        prompt=doc["prompt"],
        kind=doc["kind"],
        allowed_values=values,
        score_rule=rule,
        dont_know_allowed=doc.get("dont_know_allowed", True),
        exclusivity_group=doc.get("exclusivity_group"),
        applicability=doc.get("applicability"),
        confidence=doc.get("confidence", "high"),
        canonical=bool(doc.get("canonical", False)),
    )


def _load_yaml(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror or exc}") from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseFailure(f"{path}: {exc}") from exc
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise ParseFailure(f"{path}: expected a mapping at top level")
    return doc


def parse(text: str, source: str = "<catalog>") -> Catalog:
    """Parse a full catalog document (the inverse of serialize)."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseFailure(f"{source}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseFailure(f"{source}: expected a mapping at top level")
    questions: dict[str, QuestionSpec] = {}
    for qdoc in doc.get("questions", []):
        q = _question_from_doc(qdoc, source)
        if q.id in questions:
            raise ParseFailure(f"{source}: duplicate question id {q.id!r}")
        questions[q.id] = q
    facets = tuple(
        FacetSpec(
            fdoc["id"],
            fdoc.get("title", fdoc["id"]),
            fdoc.get("description", ""),
            tuple(fdoc.get("questions", [])),
        )
        for fdoc in doc.get("facets", [])
    )
    for f in facets:
        for qid in f.question_ids:
            if qid not in questions:
                raise ParseFailure(f"{source}: facet {f.id}: unknown question {qid!r}")
    extension_ids = tuple(q.id for q in questions.values() if not q.canonical)
    return Catalog(
        str(doc.get("version", CATALOG_VERSION)),
        facets,
        questions,
        doc.get("checksum", ""),
        extension_ids,
    )


def load_extended(path: str | Path) -> Catalog:
    """Canonical catalog merged with an extension file.

    The file lists questions[] (and optionally facets[]) in the catalog file
    format; its ids must not collide with canonical ones and are flagged
    non-canonical in the result.
    """
    doc = _load_yaml(path)
    source = str(path)
    questions = []
    for i, qdoc in enumerate(doc.get("questions", [])):
        if not isinstance(qdoc, dict):
            raise ParseFailure(f"{source}: questions[{i}] is not a mapping")
        questions.append(_question_from_doc(qdoc, source))
    facets = [
        FacetSpec(
            fdoc["id"],
            fdoc.get("title", fdoc["id"]),
            fdoc.get("description", ""),
            (),
        )
        for fdoc in doc.get("facets", [])
    ]
    return extend(load_canonical(), facets, questions)


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Catalog used by CLI/service: canonical, or extended from a file."""
    if path is None:
        return load_canonical()
    return load_extended(path)


# Size buckets for data_volume.size. Decimal units: 500MB is 5e8 bytes, 10G is
# 1e10, 100G is 1e11. 500MB opens the second bucket, 10G the third; 100G still
# belongs to the third.
_MB_500 = 500_000_000
_GB_10 = 10_000_000_000
_GB_100 = 100_000_000_000

_SIZE_UNITS = {
    "B": 1,
    "KB": 10**3,
    "MB": 10**6,
    "GB": 10**9,
    "G": 10**9,
    "TB": 10**12,
}


def size_bucket_label(byte_size: int) -> str:
    if byte_size < 0:
        raise InputError("byte size must be nonnegative")
    if byte_size < _MB_500:
        return "LessThan500MB"
    if byte_size < _GB_10:
        return "From500MBTo10GB"
    if byte_size <= _GB_100:
        return "From10GBTo100GB"
    return "MoreThan100GB"


def parse_size_bytes(text: str) -> int:
    """Parse a size like '0.5GB', '.35 GB', '200 MB' into bytes."""
    m = re.fullmatch(
        r"\s*(\d*\.?\d+)\s*(B|KB|MB|GB|G|TB)\s*", text, flags=re.IGNORECASE
    )
    if not m:
        raise InputError(f"unparseable size {text!r}")
    amount = Fraction(m.group(1))
    return int(amount * _SIZE_UNITS[m.group(2).upper()])
