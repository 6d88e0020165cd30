import json

import pytest

from geceval.errors import InputError, UndefinedStatisticError
from geceval.reports import (
    ALL_LEVEL,
    postedit_report,
    rank_correlation,
    render_distribution_json,
    render_distribution_text,
    render_report_json,
    render_report_text,
    score_distribution,
)


def test_postedit_identical_means_zero():
    rows = [("sys", "A", "han går hem", "han går hem"),
            ("sys", "B", "vi ses", "vi ses")]
    report = postedit_report(rows)
    assert report.value("sys", ALL_LEVEL) == 0.0
    assert report.value("sys", "A") == 0.0
    assert report.value("sys", "B") == 0.0


def test_postedit_bucket_mean():
    # nld 0.2 and 0.4 in one bucket -> 0.3
    rows = [("sys", "A", "aaaaaaaaaa", "aaaaaaaabb"),   # 2/10
            ("sys", "A", "aaaaaaaaaa", "aaaaaabbbb")]   # 4/10
    report = postedit_report(rows)
    assert report.value("sys", "A") == pytest.approx(0.3)


def test_postedit_overall_pooled_not_level_averaged():
    rows = [("sys", "A", "aaaaaaaaaa", "aaaaaaaabb"),   # 0.2
            ("sys", "A", "aaaaaaaaaa", "aaaaaabbbb"),   # 0.4
            ("sys", "B", "aaaaaaaaaa", "aaaaaaaaaa")]   # 0.0
    report = postedit_report(rows)
    assert report.value("sys", ALL_LEVEL) == pytest.approx(0.6 / 3)


def test_postedit_unknown_bucket_flagged():
    rows = [("sys", "D", "abc", "abc")]
    report = postedit_report(rows)
    assert report.value("sys", "unknown") == 0.0
    assert any("unknown" in note for note in report.notes)


def test_postedit_empty_rejected():
    with pytest.raises(InputError):
        postedit_report([])


def test_distribution_row_counts():
    ratings = (
        [("Granska", 4)] * 125 + [("Granska", 3)] * 34 + [("Granska", 2)] * 11
        + [("Granska", 1)] * 13 + [("Granska", "other")] * 9
    )
    dist = score_distribution(ratings)
    row = dist.row("Granska")
    assert row == {"Identical": 125, "Minor": 34, "Moderate": 11,
                   "Substantial": 13, "Other": 9}
    assert sum(row.values()) == 192
    expected_mean = (125 * 4 + 34 * 3 + 11 * 2 + 13 * 1) / (192 - 9)
    assert dist.means["Granska"] == pytest.approx(expected_mean)


def test_distribution_empty_input():
    dist = score_distribution([])
    assert dist.systems == []
    assert dist.counts == {}


def test_distribution_all_other_mean_absent():
    dist = score_distribution([("sys", "other"), ("sys", "other")])
    assert dist.means["sys"] is None


def test_distribution_rejects_bad_score():
    with pytest.raises(InputError):
        score_distribution([("sys", 5)])


def test_rank_correlation_perfect_linear():
    x = [1.0, 2.0, 3.0, 4.0]
    y = [2 * v + 1 for v in x]
    assert rank_correlation(x, y) == (pytest.approx(1.0), pytest.approx(1.0))


def test_rank_correlation_negative():
    x = [1.0, 2.0, 3.0]
    y = [-v for v in x]
    assert rank_correlation(x, y) == (pytest.approx(-1.0), pytest.approx(-1.0))


def test_rank_correlation_hand_spearman():
    pearson, spearman = rank_correlation([1, 2, 3], [1, 3, 2])
    assert spearman == pytest.approx(0.5)
    assert pearson == pytest.approx(0.5)


def test_rank_correlation_constant_rejected():
    with pytest.raises(UndefinedStatisticError):
        rank_correlation([1.0, 1.0, 1.0], [1, 2, 3])


def test_rank_correlation_length_checks():
    with pytest.raises(InputError):
        rank_correlation([1, 2], [1, 2])
    with pytest.raises(InputError):
        rank_correlation([1, 2, 3], [1, 2])


def test_render_text_layout():
    rows = [("sys-a", "A", "aaaa", "aaab"), ("sys-b", "B", "ab", "ab")]
    text = render_report_text(postedit_report(rows))
    lines = text.splitlines()
    assert lines[0].split() == ["System", "All", "A", "B"]
    assert lines[1].startswith("sys-a")
    assert "0.2500" in lines[1]


def test_render_json_schema():
    rows = [("sys-a", "A", "aaaa", "aaab")]
    payload = render_report_json(postedit_report(rows))
    assert {"metric": "NLD", "system": "sys-a", "level": "All",
            "value": 0.25} in payload
    json.dumps(payload)  # serializable


def test_render_distribution_outputs():
    dist = score_distribution([("sys", 4), ("sys", "other")])
    text = render_distribution_text(dist)
    assert "Identical" in text and "sys" in text
    payload = render_distribution_json(dist)
    assert payload[0]["system"] == "sys"
    assert payload[0]["Identical"] == 1
