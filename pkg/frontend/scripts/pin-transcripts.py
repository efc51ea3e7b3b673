"""Pin HTTP transcripts for the frontend test suite.

Drives the real dataworth service in-process and records each exchange as
{method, path, request, status, response}. The UI tests replay these through
a fake fetch, so they exercise the exact JSON the service produces without
needing a running server. Regenerate with:

    python3 scripts/pin-transcripts.py

Session ids and timestamps are rewritten to stable placeholders so reruns
produce identical files.
"""

from __future__ import annotations

import json
import re
import tempfile
from fractions import Fraction
from pathlib import Path

from starlette.testclient import TestClient

from dataworth import catalog as cat
from dataworth.assessment import from_replay_table
from dataworth.numbers import to_jsonable
from dataworth.report import value_to_document
from dataworth.scoring import QuestionScore, ValueReport
from dataworth.service import create_app

HERE = Path(__file__).resolve().parent
OUT = HERE.parent / "test" / "transcripts"
FIXTURES = HERE.parent.parent / "fixtures"

TIMESTAMP = "2026-08-22T00:00:00+00:00"
_ISO_RE = re.compile(r"\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(?:\.\d+)?\+00:00")


class Recorder:
    """TestClient wrapper that appends every exchange to a transcript."""

    def __init__(self, client: TestClient):
        self.client = client
        self.entries: list[dict] = []

    def call(self, method: str, path: str, body: dict | None = None) -> dict:
        response = self.client.request(method, path, json=body)
        doc = response.json()
        entry = {"method": method, "path": path, "status": response.status_code}
        if body is not None:
            entry["request"] = body
        entry["response"] = doc
        self.entries.append(entry)
        return doc


def stabilize(entries: list[dict], renames: dict[str, str]) -> list[dict]:
    text = json.dumps(entries)
    for real, stable in renames.items():
        text = text.replace(real, stable)
    text = _ISO_RE.sub(TIMESTAMP, text)
    return json.loads(text)


def write(name: str, note: str, entries: list[dict]) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / name
    body = json.dumps(entries, indent=1)
    path.write_text(
        "// Generated by scripts/pin-transcripts.py; do not edit.\n"
        f"// {note}\n"
        f"export const entries = {body};\n"
    )
    print(f"wrote {path} ({len(entries)} entries)")


def pin_live() -> None:
    catalog = cat.load_catalog()
    with tempfile.TemporaryDirectory() as store:
        rec = Recorder(TestClient(create_app(catalog, store)))
        rec.call("GET", "/catalog")

        # The wizard reconciles every accepted submission with a fresh
        # score report, so each PUT is followed by the GET it will issue.
        s1 = rec.call("POST", "/sessions", {"dataset_id": "demo", "mode": "raw_sum"})["session_id"]
        rec.call(
            "PUT",
            f"/sessions/{s1}/answers",
            {"answers": {"data_layout.structure": "Structured"}},
        )
        rec.call("GET", f"/sessions/{s1}/score")
        rec.call(
            "PUT",
            f"/sessions/{s1}/answers",
            {"answers": {"data_layout.structure": "Cubist"}},
        )
        rec.call(
            "PUT",
            f"/sessions/{s1}/answers",
            {"answers": {"data_age.currency": "DontKnow"}},
        )
        rec.call("GET", f"/sessions/{s1}/score")
        rec.call(
            "PUT",
            f"/sessions/{s1}/answers",
            {"answers": {"transformation.anonymized": "N"}},
        )
        rec.call("GET", f"/sessions/{s1}/score")
        rec.call(
            "PUT",
            f"/sessions/{s1}/answers",
            {"answers": {"quality.precision": 0.8}},
        )
        rec.call("GET", f"/sessions/{s1}/score")
        rec.call(
            "PUT",
            f"/sessions/{s1}/answers",
            {"answers": {"data_age.currency": None}},
        )
        rec.call("GET", f"/sessions/{s1}/score")
        rec.call("GET", f"/sessions/{s1}")
        rec.call(
            "POST",
            "/whatif",
            {"session_id": s1, "changes": {"transformation.anonymized": "Y"}},
        )

        s2 = rec.call("POST", "/sessions", {"dataset_id": "rival", "mode": "raw_sum"})["session_id"]
        rec.call(
            "PUT",
            f"/sessions/{s2}/answers",
            {"answers": {"data_layout.structure": "Semi-structured"}},
        )
        rec.call("GET", f"/sessions/{s2}")

        s3 = rec.call("POST", "/sessions", {"dataset_id": "third", "mode": "raw_sum"})["session_id"]
        rec.call(
            "PUT",
            f"/sessions/{s3}/answers",
            {"answers": {"data_layout.structure": "Unstructured"}},
        )
        rec.call("GET", f"/sessions/{s3}")

        s4 = rec.call("POST", "/sessions", {"dataset_id": "rival-twin", "mode": "raw_sum"})["session_id"]
        rec.call(
            "PUT",
            f"/sessions/{s4}/answers",
            {"answers": {"data_layout.structure": "Semi-structured"}},
        )
        rec.call("GET", f"/sessions/{s4}")

        rec.call("POST", "/compare", {"session_ids": [s1, s2]})
        rec.call("POST", "/compare", {"session_ids": [s1, s2, s3]})
        rec.call("POST", "/compare", {"session_ids": [s2, s4]})
        rec.call("GET", "/sessions")

        renames = {s1: "s-alpha", s2: "s-beta", s3: "s-gamma", s4: "s-twin"}
        entries = stabilize(rec.entries, renames)

    # A session served by a server on an older catalog, for the version
    # mismatch notice. Copied from s-beta with only the version changed;
    # no /compare entry exists for it, the client must refuse first.
    beta_doc = next(
        e for e in entries if e["method"] == "GET" and e["path"] == "/sessions/s-beta"
    )["response"]
    aged = json.loads(json.dumps(beta_doc))
    aged["session_id"] = "s-aged"
    aged["catalog_version"] = "0.9.9"
    entries.append(
        {"method": "GET", "path": "/sessions/s-aged", "status": 200, "response": aged}
    )

    write(
        "live.ts",
        "Recorded from the dataworth HTTP service in-process; "
        "session ids and timestamps rewritten to stable placeholders.",
        entries,
    )


def pin_published_assessment() -> None:
    catalog = cat.with_examples_pack()
    response_set, table = from_replay_table(FIXTURES / "india_prisons.tsv", catalog)

    per_question = {}
    facet_subtotals: dict[str, Fraction] = {}
    dont_know = not_applicable = 0
    for row in table.rows:
        per_question[row.question_id] = QuestionScore(
            question_id=row.question_id,
            value=row.value,
            score=row.printed_score,
            weight=Fraction(1),
            contribution=row.printed_score,
            provenance="replay_fixture",
        )
        facet = row.question_id.split(".", 1)[0]
        facet_subtotals[facet] = facet_subtotals.get(facet, Fraction(0)) + row.printed_score
        if row.value == cat.DONT_KNOW:
            dont_know += 1
        elif row.value == cat.NOT_APPLICABLE:
            not_applicable += 1

    report = ValueReport(
        dataset_id=table.dataset_id,
        catalog_version=catalog.version,
        mode="raw_sum",
        renormalize_on_omission=True,
        profile_fingerprint=None,
        per_question=per_question,
        facet_subtotals=facet_subtotals,
        total=table.printed_total,
        answered_count=len(table.rows),
        omitted_count=len(catalog.questions) - len(table.rows),
        dont_know_count=dont_know,
        not_applicable_count=not_applicable,
    )

    answers = {
        qid: {
            "value": r.value if isinstance(r.value, str) else to_jsonable(r.value),
            "provenance": r.provenance,
        }
        for qid, r in sorted(response_set.responses.items())
    }
    session_doc = {
        "session_id": "s-india",
        "dataset_id": response_set.dataset_id,
        "catalog_version": response_set.catalog_version,
        "answers": answers,
        "mode": "raw_sum",
        "created": TIMESTAMP,
        "updated": TIMESTAMP,
    }

    entries = [
        {
            "method": "GET",
            "path": "/catalog",
            "status": 200,
            "response": cat.to_document(catalog),
        },
        {
            "method": "GET",
            "path": "/sessions/s-india",
            "status": 200,
            "response": session_doc,
        },
        {
            "method": "GET",
            "path": "/sessions/s-india/score",
            "status": 200,
            "response": value_to_document(report),
        },
    ]
    write(
        "published-assessment.ts",
        "A fixture server preloaded with a published worked assessment. "
        "Row scores and the grand total are carried verbatim from the "
        "published table, whose total disagrees with the sum of its own "
        "rows; the UI must render the served numbers either way.",
        entries,
    )


if __name__ == "__main__":
    pin_live()
    pin_published_assessment()
