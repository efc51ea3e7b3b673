"""dataworth: facet-based dataset valuation.

A catalog of assessment questions grouped into facets, a weighted scoring
engine over exact rational arithmetic, a file profiler that pre-answers
questions from evidence, corpus distribution and rank-prior tooling, report
rendering, an HTTP API and a command-line tool.
"""

from .assessment import (
    Response,
    ResponseSet,
    ValidationReport,
    build_response_set,
    from_replay_table,
    load_answers,
    merge,
    save_answers,
    validate,
)
from .catalog import (
    CATALOG_VERSION,
    Catalog,
    FacetSpec,
    QuestionSpec,
    ScoreRule,
    load_catalog,
    load_canonical,
    with_examples_pack,
)
from .corpus import (
    Corpus,
    DatasetDescriptor,
    DistributionTable,
    RankPrior,
    derive_rank_prior,
    distribution,
    distributions,
    ingest,
    prior_to_scores,
)
from .errors import DataworthError, InputError, ParseFailure
from .profiler import (
    DatasetProfile,
    HeuristicRulePack,
    auto_fill,
    default_rulepack,
    detect_format,
    profile,
)
from .report import RenderSpec, render_comparison, render_value, value_from_document
from .scoring import (
    ComparisonReport,
    DeltaReport,
    ReplayVerdict,
    ValueReport,
    WeightProfile,
    compare,
    compute_value,
    replay_check,
    score_response,
    what_if,
)

__version__ = "0.1.0"

__all__ = [
    "CATALOG_VERSION",
    "Catalog",
    "ComparisonReport",
    "Corpus",
    "DatasetDescriptor",
    "DatasetProfile",
    "DataworthError",
    "DeltaReport",
    "DistributionTable",
    "FacetSpec",
    "HeuristicRulePack",
    "InputError",
    "ParseFailure",
    "QuestionSpec",
    "RankPrior",
    "RenderSpec",
    "ReplayVerdict",
    "Response",
    "ResponseSet",
    "ScoreRule",
    "ValidationReport",
    "ValueReport",
    "WeightProfile",
    "auto_fill",
    "build_response_set",
    "compare",
    "compute_value",
    "default_rulepack",
    "derive_rank_prior",
    "detect_format",
    "distribution",
    "distributions",
    "from_replay_table",
    "ingest",
    "load_answers",
    "load_canonical",
    "load_catalog",
    "merge",
    "prior_to_scores",
    "profile",
    "render_comparison",
    "render_value",
    "replay_check",
    "save_answers",
    "score_response",
    "validate",
    "value_from_document",
    "what_if",
    "with_examples_pack",
    "__version__",
]
