import pytest

from geceval.baseline import Lexicon
from geceval.corpus import SentenceRecord, SystemOutput
from geceval.ngram_lm import train_char_ngram


@pytest.fixture(scope="session")
def tiny_model():
    """Character model trained to strongly prefer 'han går hem'."""
    corpus = ["han går hem"] * 50 + ["vi ses då", "hon går dit", "de går hem nu"]
    return train_char_ngram(corpus, order=3, k=0.1)


@pytest.fixture(scope="session")
def tiny_lexicon():
    return Lexicon.from_words(["han", "går", "gå", "hem", "hon", "dit", "vi", "ses", "då"])


@pytest.fixture
def small_pool_inputs():
    sentences = [
        SentenceRecord(id="s1", source="han gå hem", cefr="A",
                       references=["han går hem"]),
        SentenceRecord(id="s2", source="hon gå dit", cefr="B",
                       references=["hon går dit"]),
    ]
    outputs = [
        SystemOutput("s1", "sys-a", "han går hem"),
        SystemOutput("s1", "sys-b", "han gå hem"),
        SystemOutput("s2", "sys-a", "hon går dit"),
        SystemOutput("s2", "sys-b", "hon gå dit"),
    ]
    return sentences, outputs


_ACCEPTANCE_RESULTS: dict[str, str] = {}


def record_acceptance(name: str, outcome: str) -> None:
    _ACCEPTANCE_RESULTS[name] = outcome


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"
        if report.skipped:
            _ACCEPTANCE_RESULTS[name] = "SKIP"
    elif report.when == "setup" and report.skipped:
        _ACCEPTANCE_RESULTS[name] = "SKIP"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{outcome}  {name}")
