import json
from pathlib import Path

import pytest

from dataworth import load_canonical, with_examples_pack

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

# Synthetic file corpus for profiler checks:
# filename -> (expected format, expected schema presence; None = not applicable)
CORPUS_LABELS = {
    "plain.csv": ("csv", True),
    "headerless.csv": ("csv", False),
    "people.csv": ("csv", True),
    "quoted.csv": ("csv", True),
    "single_col.csv": ("csv", True),
    "empty.csv": ("csv", False),
    "sensor.csv": ("csv", True),
    "health.csv": ("csv", True),
    "dates.csv": ("csv", True),
    "aggregates.csv": ("csv", True),
    "tabs.tsv": ("tsv", True),
    "data.json": ("json", True),
    "records.jsonl": ("json", True),
    "ragged.json": ("json", False),
    "doc.xml": ("xml", True),
    "mixed.xml": ("xml", False),
    "report.pdf": ("pdf", None),
    "anim.gif": ("gif_jpg", None),
    "photo.jpg": ("gif_jpg", None),
    "archive.bin": ("other", None),
    "notes.txt": ("other", None),
    "pdf_in_disguise.csv": ("pdf", None),
    "csv_in_disguise.txt": ("csv", True),
}


def build_file_corpus(root: Path) -> Path:
    def write(name, content):
        path = root / name
        if isinstance(content, bytes):
            path.write_bytes(content)
        else:
            path.write_text(content)

    write("plain.csv", "id,age,state\n1,34,KA\n2,41,MH\n3,29,TN\n")
    write("headerless.csv", "1,2,3\n4,5,6\n7,8,9\n")
    write(
        "people.csv",
        "name,age,city\n"
        "Row One,31,Pune\n"
        "Row Two,,Delhi\n"
        "Row Three,45,Chennai\n"
        "Row Four,38,Mumbai\n"
        "Row Five,52,Kolkata\n"
        "Row Six,27,Jaipur\n"
        "Row Seven,33,Kochi\n"
        "Row Eight,60,Patna\n"
        "Row Nine,24,Surat\n"
        "Row One,31,Pune\n",
    )
    write('quoted.csv', 'title,blurb\n"One, Two",note\n"Three, Four",other\n')
    write("single_col.csv", "count\n1\n2\n3\n")
    write("empty.csv", "")
    write("sensor.csv", "reading,voltage\n0.5,3.3\n0.7,3.2\n0.6,3.4\n")
    write(
        "health.csv",
        "patient_id,diagnosis,medication\n1,flu,paracetamol\n2,cold,none_listed\n",
    )
    write("dates.csv", "day,price\n2023-01-01,10\n2023-01-02,11\n")
    write("aggregates.csv", "state,total_count\nKA,100\nMH,250\n")
    write("tabs.tsv", "a\tb\n1\t2\n3\t4\n")
    write("data.json", json.dumps([{"a": 1, "b": "x"}, {"a": 2, "b": "y"}]))
    write("records.jsonl", '{"a": 1, "b": "x"}\n{"a": 2, "b": "y"}\n')
    write("ragged.json", json.dumps([{"a": 1}, {"b": 2}]))
    write(
        "doc.xml",
        "<rows><row><a>1</a><b>x</b></row><row><a>2</a><b>y</b></row></rows>",
    )
    write(
        "mixed.xml",
        "<rows><row><a>1</a></row><row><b>2</b><c>3</c></row></rows>",
    )
    write("report.pdf", b"%PDF-1.7 fake body")
    write("anim.gif", b"GIF89a\x01\x00\x01\x00")
    write("photo.jpg", b"\xff\xd8\xff\xe0JFIF")
    write("archive.bin", bytes(range(256)))
    write("notes.txt", "Free text without any consistent delimiters.\nJust prose.\n")
    write("pdf_in_disguise.csv", b"%PDF-1.4 still a pdf")
    write("csv_in_disguise.txt", "x,y\n1,2\n3,4\n")
    return root


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory) -> Path:
    return build_file_corpus(tmp_path_factory.mktemp("file_corpus"))

# criterion label -> all marked tests for it passed
_acceptance_results: dict[str, bool] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): ties a test to one acceptance criterion"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker:
        name = marker.args[0]
        _acceptance_results[name] = _acceptance_results.get(name, True) and report.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance_results):
        status = "PASS" if _acceptance_results[name] else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")


@pytest.fixture(scope="session")
def catalog():
    return load_canonical()


@pytest.fixture(scope="session")
def extended_catalog():
    return with_examples_pack()


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURE_DIR


def fixture_path(name: str) -> Path:
    return FIXTURE_DIR / f"{name}.tsv"
