"""Tests for the randomized trial runner and the table emitters."""

from collections import Counter

import pytest

from algebra.koszul import TorClass
from config import reset_config
from errors import ParameterRangeError
from experiment.report import CSV_COLUMNS, emit, format_counts, format_outcomes
from experiment.runner import (
    TallyRow,
    TrialRecord,
    reproduce_table1,
    run_trial,
    run_trials,
    trial_seed,
    valid_pairs,
)
from theory.predictor import generic_class

G = TorClass.gorenstein_like


def fake_record(index, tor_class, m, compressed=True, failure=None):
    return TrialRecord(
        seed=index,
        index=index,
        s1=5,
        s=6,
        p=32003,
        m=m,
        tor_class=tor_class,
        compressed=(True, True, compressed),
        failure=failure,
    )


class TestSeeds:
    def test_trial_seed_is_deterministic(self):
        assert trial_seed(1, 3, 4, 0) == trial_seed(1, 3, 4, 0)
        assert trial_seed(1, 3, 4, 0) != trial_seed(1, 3, 4, 1)
        assert trial_seed(1, 3, 4, 0) != trial_seed(2, 3, 4, 0)
        assert 0 <= trial_seed(1, 3, 4, 0) < 2 ** 64

    def test_valid_pairs(self):
        assert valid_pairs(4) == [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)]
        assert len(valid_pairs(10)) == 29
        assert all(s < 2 * s1 for s1, s in valid_pairs(10))


class TestTallyRow:
    def test_modal_breaks_ties_by_smaller_m(self):
        records = [
            fake_record(0, G(1), 6),
            fake_record(1, G(3), 9),
            fake_record(2, G(1), 6),
            fake_record(3, G(3), 9),
            fake_record(4, G(4), 9),
        ]
        row = TallyRow.from_records(5, 6, 32003, records)
        assert row.modal == (G(1), 6)
        assert row.agree
        assert row.other_observed == [(G(3), 9), (G(4), 9)]
        assert row.successful == 5

    def test_failures_and_non_compressed_are_not_counted(self):
        records = [
            fake_record(0, G(1), 6),
            fake_record(1, G(3), 9, compressed=False),
            fake_record(2, None, 0, failure="gave up"),
        ]
        row = TallyRow.from_records(5, 6, 32003, records)
        assert row.counts == Counter({(G(1), 6): 1})
        assert row.non_compressed == 1
        assert row.failures == 1
        assert "not compressed: 1" in format_counts(row)

    def test_empty_row(self):
        row = TallyRow.from_records(5, 6, 32003, [fake_record(0, None, 0, failure="gave up")])
        assert row.modal is None
        assert row.modal_class is None
        assert not row.agree


class TestRunTrials:
    def test_single_trial(self):
        record = run_trial(2, 2, 32003, seed=1)
        assert record.ok
        assert record.h == (1, 3, 2)
        assert record.socle == "2χ^2"
        assert record.outcome == (TorClass.h(3, 2), 4)
        assert record.matches_generic
        assert record.allowed
        assert record.to_dict()["class"] == "H(3,2)"

    def test_genericity_failure_is_recorded(self):
        record = run_trial(3, 4, 32003, seed=1, retry_cap=0)
        assert not record.ok
        assert record.tor_class is None
        assert record.to_dict()["failure"]

    def test_small_run(self):
        row = run_trials(2, 2, p=32003, n=3, seed=1)
        assert row.trials == 3
        assert (row.modal_class, row.modal_m) == (TorClass.h(3, 2), 4)
        assert row.agree

    def test_worker_count_does_not_change_output(self):
        serial = run_trials(3, 4, p=32003, n=4, seed=5, workers=1)
        threaded = run_trials(3, 4, p=32003, n=4, seed=5, workers=2)
        assert [r.to_dict() for r in serial.records] == [r.to_dict() for r in threaded.records]
        assert emit([serial]) == emit([threaded])

    def test_rejects_bad_counts(self):
        with pytest.raises(ParameterRangeError):
            run_trials(3, 4, n=0)
        with pytest.raises(ParameterRangeError):
            run_trials(3, 4, n=1, workers=0)
        with pytest.raises(ParameterRangeError):
            run_trials(2, 4, n=1)

    def test_defaults_come_from_environment(self, monkeypatch):
        monkeypatch.setenv("TORCLASS_TRIALS", "2")
        monkeypatch.setenv("TORCLASS_PRIME", "101")
        reset_config()
        row = run_trials(2, 2)
        assert (row.trials, row.p) == (2, 101)

    def test_table_bounds(self):
        with pytest.raises(ParameterRangeError):
            reproduce_table1(1)
        with pytest.raises(ParameterRangeError):
            reproduce_table1(13)


class TestEmit:
    def row(self):
        return TallyRow.from_records(
            4, 5, 32003, [fake_record(0, G(1), 9), fake_record(1, G(3), 7), fake_record(2, G(1), 9)]
        )

    def test_header_only(self):
        assert emit([]) == ",".join(CSV_COLUMNS) + "\n"

    def test_csv_row(self):
        lines = emit([self.row()]).splitlines()
        assert len(lines) == 2
        assert lines[0].split(",") == list(CSV_COLUMNS)
        assert lines[1].startswith('4,5,"(1,3,6,9,4,1)",3,G(1),9,G(3) m=7,G(1),9,true')

    def test_csv_metadata(self):
        text = emit([], metadata={"prime": 32003, "trials": 2})
        assert text.splitlines()[:2] == ["# prime: 32003", "# trials: 2"]

    def test_markdown(self):
        text = emit([self.row()], "markdown")
        assert "G(1)" in text
        assert "| 9 |" in text
        assert "G(3) m=7" in text
        assert text.splitlines()[0].startswith("| s1 | s | h | t | Generic class")

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit([], "latex")

    def test_format_outcomes(self):
        assert format_outcomes([(G(1), 7), (TorClass.golod(), 9)]) == "G(1) m=7; H(0,0) m=9"


@pytest.mark.slow
def test_small_socle_degrees_match_the_generic_prediction():
    rows = reproduce_table1(4, p=32003, n=10, seed=1)
    assert [(row.s1, row.s) for row in rows] == valid_pairs(4)
    for row in rows:
        assert (row.modal_class, row.modal_m) == generic_class(row.s1, row.s)
        assert row.agree


TABLE_UP_TO_SIX = {
    (2, 2): (TorClass.h(3, 2), 4),
    (2, 3): (TorClass.b(), 5),
    (3, 3): (TorClass.golod(), 8),
    (3, 4): (G(3), 6),
    (4, 4): (TorClass.golod(), 5),
    (3, 5): (G(3), 6),
    (4, 5): (G(1), 9),
    (5, 5): (TorClass.golod(), 9),
    (4, 6): (G(5), 8),
    (5, 6): (G(1), 6),
    (6, 6): (TorClass.golod(), 9),
}


@pytest.mark.slow
def test_table_up_to_socle_degree_six():
    rows = reproduce_table1(6, p=32003, n=25, seed=1)
    assert [(row.s1, row.s) for row in rows] == valid_pairs(6)
    assert len(rows) == 11
    for row in rows:
        assert (row.modal_class, row.modal_m) == TABLE_UP_TO_SIX[(row.s1, row.s)]
        assert row.failures == 0
        assert row.non_compressed == 0
