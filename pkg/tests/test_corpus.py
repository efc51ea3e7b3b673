from fractions import Fraction
from pathlib import Path

import pytest
import yaml
from hypothesis import given
from hypothesis import strategies as st

from dataworth import corpus as cp
from dataworth.errors import InputError


def write_descriptor(path: Path, dataset_id: str, values: dict, source="test_dump"):
    path.write_text(
        yaml.safe_dump({"id": dataset_id, "source": source, "values": values})
    )


def build_corpus(tmp_path: Path, rows: list[dict]) -> cp.Corpus:
    root = tmp_path / "descriptors"
    root.mkdir(exist_ok=True)
    for i, values in enumerate(rows):
        write_descriptor(root / f"d{i:03}.yaml", f"dataset-{i:03}", values)
    return cp.ingest([root])


def test_ingest_counts_and_sources(tmp_path):
    corpus = build_corpus(tmp_path, [{"pii": "N"}, {"pii": "Y"}, {"pii": "N"}])
    assert corpus.size == 3
    assert not corpus.errors
    assert corpus.dimensions() == ["pii"]


def test_ingest_skips_and_reports_malformed(tmp_path):
    root = tmp_path / "descriptors"
    root.mkdir()
    write_descriptor(root / "good.yaml", "ok", {"pii": "N"})
    (root / "broken.yaml").write_text("id: [unclosed")
    (root / "noid.yaml").write_text("values: {pii: N}\n")
    corpus = cp.ingest([root])
    assert corpus.size == 1
    assert len(corpus.errors) == 2
    assert {Path(e.path).name for e in corpus.errors} == {"broken.yaml", "noid.yaml"}


def test_duplicate_id_is_a_hard_error_naming_both_files(tmp_path):
    root = tmp_path / "descriptors"
    root.mkdir()
    write_descriptor(root / "first.yaml", "same", {"pii": "N"})
    write_descriptor(root / "second.yaml", "same", {"pii": "Y"})
    with pytest.raises(InputError) as err:
        cp.ingest([root])
    assert "first.yaml" in str(err.value)
    assert "second.yaml" in str(err.value)


def test_unknown_dimension_kept_as_extension(tmp_path):
    corpus = build_corpus(tmp_path, [{"made_up_dimension": "curious"}])
    row = cp.distribution(corpus, "made_up_dimension")
    assert row.counts == {"curious": 1}


def test_distribution_exact_counts(tmp_path):
    corpus = build_corpus(
        tmp_path, [{"pii": "N"}] * 7 + [{"pii": "Y"}] * 3 + [{"schema": "Y"}]
    )
    row = cp.distribution(corpus, "pii")
    assert row.counts == {"N": 7, "Y": 3}
    assert row.observed == 10
    assert row.missing == 1  # the schema-only descriptor lacks the dimension


def test_distribution_unknown_dimension_errors(tmp_path):
    corpus = build_corpus(tmp_path, [{"pii": "N"}])
    with pytest.raises(InputError, match="not observed"):
        cp.distribution(corpus, "nope")


def test_distribution_single_descriptor_degenerate(tmp_path):
    corpus = build_corpus(tmp_path, [{"format": "csv"}])
    assert cp.distribution(corpus, "format").counts == {"csv": 1}


def test_rank_prior_orders_by_frequency_then_label(tmp_path):
    corpus = build_corpus(
        tmp_path,
        [{"format": "csv"}] * 5
        + [{"format": "json"}] * 2
        + [{"format": "xml"}] * 2
        + [{"format": "pdf"}],
    )
    prior = cp.derive_rank_prior(cp.distribution(corpus, "format"))
    # json and xml tie at 2; label order breaks the tie.
    assert prior.order == ("csv", "json", "xml", "pdf")
    assert prior.provenance == "frequency_derived"


def test_rank_prior_override_must_be_permutation(tmp_path):
    corpus = build_corpus(tmp_path, [{"size": "small"}] * 3 + [{"size": "large"}])
    row = cp.distribution(corpus, "size")
    prior = cp.derive_rank_prior(row, ["large", "small"])
    assert prior.order == ("large", "small")
    assert prior.provenance == "manual_override"
    with pytest.raises(InputError, match="unobserved"):
        cp.derive_rank_prior(row, ["large", "medium", "small"])
    with pytest.raises(InputError, match="misses"):
        cp.derive_rank_prior(row, ["large"])
    with pytest.raises(InputError, match="repeats"):
        cp.derive_rank_prior(row, ["large", "large", "small"])


def test_prior_to_scores_even_spacing():
    three = cp.prior_to_scores(cp.RankPrior("x", ("Large", "Medium", "Small"), "manual_override"))
    assert three.map == {
        "Large": Fraction(1),
        "Medium": Fraction(1, 2),
        "Small": Fraction(0),
    }
    two = cp.prior_to_scores(cp.RankPrior("x", ("N", "Y"), "frequency_derived"))
    assert two.map == {"N": Fraction(1), "Y": Fraction(0)}
    one = cp.prior_to_scores(cp.RankPrior("x", ("A",), "frequency_derived"))
    assert one.map == {"A": Fraction(1)}


@given(st.integers(min_value=2, max_value=12))
def test_prior_scores_strictly_decreasing_and_bounded(k):
    order = tuple(f"v{i}" for i in range(k))
    rule = cp.prior_to_scores(cp.RankPrior("dim", order, "frequency_derived"))
    scores = [rule.map[v] for v in order]
    assert scores[0] == 1
    assert scores[-1] == 0
    assert all(a > b for a, b in zip(scores, scores[1:]))
    assert all(0 <= s <= 1 for s in scores)


def test_distribution_counts_match_independent_recount(tmp_path):
    rows = (
        [{"pii": "N", "layout": "Structured"}] * 4
        + [{"pii": "Y", "layout": "Structured"}] * 2
        + [{"pii": "N", "layout": "Unstructured"}] * 3
    )
    corpus = build_corpus(tmp_path, rows)
    # Recount straight off the input spec, not through the module under test.
    recount: dict[str, dict[str, int]] = {}
    for values in rows:
        for dimension, value in values.items():
            recount.setdefault(dimension, {}).setdefault(value, 0)
            recount[dimension][value] += 1
    table = cp.distributions(corpus)
    for dimension, counts in recount.items():
        assert dict(table.rows[dimension].counts) == counts


def test_save_distribution_export(tmp_path):
    corpus = build_corpus(tmp_path, [{"pii": "N"}] * 2 + [{"pii": "Y"}])
    out = tmp_path / "dist.tsv"
    cp.save_distribution(cp.distributions(corpus), out)
    lines = out.read_text().splitlines()
    assert lines[0] == "# corpus_size\t3"
    assert lines[1] == "dimension\tvalue\tcount\tmissing"
    assert "pii\tN\t2\t0" in lines
    assert "pii\tY\t1\t0" in lines
