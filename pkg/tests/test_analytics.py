import io
import json

import pytest

from david.analytics import (
    TRAJECTORY_HEADER,
    export_trajectories,
    payload_hash,
    persistence_stats,
    read_log,
    stats_csv,
    write_trajectories_csv,
)
from david.errors import MalformedLogLine, UnknownProblem
from david.service import SubmissionRecord


def rec(problem, student, seq, status, payload="m", witness=None):
    verdict = {"status": status}
    if witness is not None:
        verdict["witness"] = witness
    return SubmissionRecord(problem, student, seq, payload, verdict,
                            f"2026-03-01T10:{seq:02d}:00+00:00")


class TestReadLog:
    def test_roundtrip(self):
        lines = [json.dumps(rec("p1", "s1", 1, "correct").to_dict()) + "\n",
                 "\n"]
        records = read_log(lines)
        assert len(records) == 1
        assert records[0].seq == 1

    def test_malformed_line_raises_without_handler(self):
        with pytest.raises(MalformedLogLine) as e:
            read_log(["{broken\n"])
        assert e.value.line_number == 1

    def test_malformed_line_reported_and_skipped(self):
        good = json.dumps(rec("p1", "s1", 1, "correct").to_dict()) + "\n"
        errors = []
        records = read_log(["{broken\n", good, '{"problemId": "p"}\n'],
                           on_error=errors.append)
        assert len(records) == 1
        assert [e.line_number for e in errors] == [1, 3]


class TestPersistenceStats:
    def test_persisted_means_last_meaningful_attempt_correct(self):
        records = [
            rec("p1", "s1", 1, "incorrect"),
            rec("p1", "s1", 2, "correct"),
            rec("p1", "s1", 3, "syntaxError"),  # does not spoil persistence
            rec("p1", "s2", 1, "correct"),
            rec("p1", "s2", 2, "incorrect"),    # gave up after a correct try
        ]
        (stats,) = persistence_stats(records)
        assert stats.students_with_attempts == 2
        assert stats.students_ended_correct == 1
        assert stats.persistence_rate == 0.5
        assert stats.mean_attempts == 2.0

    def test_syntax_only_students_excluded_from_denominator(self):
        records = [
            rec("p1", "s1", 1, "correct"),
            rec("p1", "s2", 1, "syntaxError"),
            rec("p1", "s2", 2, "syntaxError"),
        ]
        (stats,) = persistence_stats(records)
        assert stats.students_with_attempts == 1
        assert stats.persistence_rate == 1.0

    def test_grouped_and_sorted_by_problem(self):
        records = [rec("p2", "s1", 1, "correct"),
                   rec("p1", "s1", 1, "incorrect")]
        stats = persistence_stats(records)
        assert [s.problem_id for s in stats] == ["p1", "p2"]

    def test_engine_limit_counts_as_meaningful(self):
        records = [rec("p1", "s1", 1, "correct"),
                   rec("p1", "s1", 2, "engineLimit")]
        (stats,) = persistence_stats(records)
        assert stats.students_ended_correct == 0
        assert stats.mean_attempts == 2.0

    def test_out_of_order_records_sorted_by_seq(self):
        records = [rec("p1", "s1", 2, "correct"),
                   rec("p1", "s1", 1, "incorrect")]
        (stats,) = persistence_stats(records)
        assert stats.students_ended_correct == 1

    def test_median(self):
        records = [rec("p1", "s1", i, "incorrect") for i in range(1, 6)]
        records += [rec("p1", "s2", 1, "correct")]
        (stats,) = persistence_stats(records)
        assert stats.median_attempts == 3.0

    def test_csv_header(self):
        out = stats_csv(persistence_stats([rec("p1", "s1", 1, "correct")]))
        assert out.splitlines()[0] == (
            "problemId,studentsWithAttempts,studentsEndedCorrect,"
            "persistenceRate,meanAttempts,medianAttempts")


class TestExportTrajectories:
    def test_rows_ordered_by_student_then_seq(self):
        records = [
            rec("p1", "s2", 1, "correct"),
            rec("p1", "s1", 2, "correct", payload="y"),
            rec("p1", "s1", 1, "incorrect", payload="x", witness="ab"),
        ]
        rows = export_trajectories(records, "p1")
        assert [(r[0], r[1]) for r in rows] == [("s1", 1), ("s1", 2), ("s2", 1)]

    def test_witness_length_blank_when_absent(self):
        records = [rec("p1", "s1", 1, "incorrect", witness="ab"),
                   rec("p1", "s1", 2, "correct")]
        rows = export_trajectories(records, "p1")
        assert rows[0][4] == 2
        assert rows[1][4] == ""

    def test_empty_witness_has_length_zero(self):
        rows = export_trajectories(
            [rec("p1", "s1", 1, "incorrect", witness="")], "p1")
        assert rows[0][4] == 0

    def test_duplicate_detection_is_per_student(self):
        records = [
            rec("p1", "s1", 1, "incorrect", payload="x"),
            rec("p1", "s1", 2, "incorrect", payload="x"),
            rec("p1", "s2", 1, "incorrect", payload="x"),
        ]
        rows = export_trajectories(records, "p1")
        assert [r[6] for r in rows] == ["false", "true", "false"]

    def test_syntax_errors_included_and_flagged(self):
        rows = export_trajectories(
            [rec("p1", "s1", 1, "syntaxError")], "p1")
        assert rows[0][3] == "syntaxError"

    def test_unknown_problem_raises_on_nonempty_log(self):
        with pytest.raises(UnknownProblem):
            export_trajectories([rec("p1", "s1", 1, "correct")], "p9")

    def test_empty_log_yields_header_only(self):
        rows = export_trajectories([], "p9")
        assert rows == []
        buf = io.StringIO()
        write_trajectories_csv(rows, buf)
        assert buf.getvalue().strip() == ",".join(TRAJECTORY_HEADER)

    def test_csv_shape(self):
        rows = export_trajectories(
            [rec("p1", "s1", 1, "incorrect", witness="a")], "p1")
        buf = io.StringIO()
        write_trajectories_csv(rows, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == ",".join(TRAJECTORY_HEADER)
        fields = lines[1].split(",")
        assert fields[0] == "s1"
        assert fields[5] == payload_hash("m")
