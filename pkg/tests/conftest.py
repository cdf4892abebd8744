import random
from fractions import Fraction

import pytest

from prefjoin import SimilarityMeasure, TokenizerConfig, build_corpus

TOY_R = ["db_ms", "vldb", "dbs", "db", "dblp_"]
TOY_S = ["dbms_", "dbms", "pvldb", "vl_db", "_db"]
# true matches in the toy example
TOY_TRUTH = {("db_ms", "dbms_"), ("db_ms", "dbms"), ("vldb", "pvldb"), ("vldb", "vl_db"), ("dbs", "dbms")}

ALL_MEASURES = [
    SimilarityMeasure("jaccard"),
    SimilarityMeasure("overlap"),
    SimilarityMeasure("dice"),
    SimilarityMeasure("cosine"),
    SimilarityMeasure("tversky", Fraction(1, 10)),
]


@pytest.fixture(scope="session")
def toy():
    return build_corpus(TOY_R, TOY_S, TokenizerConfig("qgrams", q=1), TOY_R, TOY_S)


@pytest.fixture(scope="session")
def jaccard():
    return SimilarityMeasure("jaccard")


@pytest.fixture
def rng():
    return random.Random(20240607)


_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _acceptance.append((mark.args[0], status, mark.args[1], round(rep.duration, 2)))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n, status, text, secs in sorted(_acceptance, key=lambda x: str(x[0])):
        terminalreporter.write_line(f"[{status}] criterion {n}: {text} ({secs}s)")
