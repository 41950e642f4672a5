import pytest

from styloprint.lexicon import FrequencyTable, Lexica, PosLexicon, StopWordList

# Hand-built lexica for the 50-token feature fixture (tests/test_features.py).
FIXTURE_STOPWORDS = {"der", "die", "das", "und", "ich", "wir", "es", "ein", "einen", "den", "im", "mit", "nach", "war"}
FIXTURE_FREQ = {"der": 1000, "und": 800, "ich": 500, "war": 250, "könig": 100, "wald": 60}
FIXTURE_POS = {
    "weil": "conjunction_sub", "dass": "conjunction_sub", "und": "conjunction_coord",
    "ich": "pronoun", "wir": "pronoun", "er": "pronoun", "es": "pronoun", "ihm": "pronoun",
    "sah": "verb", "war": "verb", "ging": "verb", "gingen": "verb", "sang": "verb",
    "sahen": "verb", "lachte": "verb", "schien": "verb",
    "alten": "adjective", "müde": "adjective", "dunkel": "adjective", "still": "adjective",
    "laut": "adjective", "hell": "adjective",
    "der": "other", "den": "other", "einen": "other", "im": "other", "mit": "other", "nach": "other",
}


@pytest.fixture(scope="session")
def fixture_lexica():
    return Lexica(
        StopWordList(frozenset(FIXTURE_STOPWORDS)),
        FrequencyTable.from_counts(FIXTURE_FREQ),
        PosLexicon.from_entries(FIXTURE_POS, [("ig", "adjective")]),
    )


_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        _ACCEPTANCE.append((marker.args[0], marker.args[1], report.outcome))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_ACCEPTANCE):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  criterion {number:>2}: {title}")
