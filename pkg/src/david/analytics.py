"""Offline persistence statistics and trajectory export over submission logs.

A student "persisted" on a problem iff their last meaningful attempt (i.e.
excluding syntax-error submissions, which carried no usable feedback) was
correct. Syntax-error attempts are excluded from the persistence math but
still appear in trajectory exports, flagged by status.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import statistics
from dataclasses import dataclass
from typing import Iterable, TextIO

from .errors import MalformedLogLine, UnknownProblem
from .service import STATUS_CORRECT, STATUS_SYNTAX_ERROR, SubmissionRecord


@dataclass(frozen=True)
class PersistenceStats:
    problem_id: str
    students_with_attempts: int
    students_ended_correct: int
    persistence_rate: float
    mean_attempts: float
    median_attempts: float

    def to_dict(self) -> dict:
        return {
            "problemId": self.problem_id,
            "studentsWithAttempts": self.students_with_attempts,
            "studentsEndedCorrect": self.students_ended_correct,
            "persistenceRate": self.persistence_rate,
            "meanAttempts": self.mean_attempts,
            "medianAttempts": self.median_attempts,
        }


def read_log(stream: Iterable[str],
             on_error=None) -> list[SubmissionRecord]:
    """Parse a JSON-lines submission log.

    Malformed lines are reported through ``on_error`` (or raised if none is
    given) and processing continues.
    """
    records = []
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
            records.append(SubmissionRecord(
                raw["problemId"], raw["studentId"], int(raw["seq"]),
                raw["payload"], raw["verdict"], raw["submittedAt"]))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            err = MalformedLogLine(str(e), lineno)
            if on_error is None:
                raise err
            on_error(err)
    return records


def _meaningful(records: list[SubmissionRecord]) -> list[SubmissionRecord]:
    return [r for r in records
            if r.verdict.get("status") != STATUS_SYNTAX_ERROR]


def persistence_stats(records: list[SubmissionRecord]) -> list[PersistenceStats]:
    """Per-problem persistence over a submission log.

    Students whose only attempts were syntax errors are excluded from the
    denominator entirely.
    """
    by_problem: dict[str, list[SubmissionRecord]] = {}
    for r in records:
        by_problem.setdefault(r.problem_id, []).append(r)

    out = []
    for problem_id in sorted(by_problem):
        meaningful = _meaningful(by_problem[problem_id])
        by_student: dict[str, list[SubmissionRecord]] = {}
        for r in meaningful:
            by_student.setdefault(r.student_id, []).append(r)
        attempts = []
        persisted = 0
        for student_records in by_student.values():
            student_records.sort(key=lambda r: r.seq)
            attempts.append(len(student_records))
            if student_records[-1].verdict.get("status") == STATUS_CORRECT:
                persisted += 1
        count = len(by_student)
        out.append(PersistenceStats(
            problem_id=problem_id,
            students_with_attempts=count,
            students_ended_correct=persisted,
            persistence_rate=persisted / count if count else 0.0,
            mean_attempts=statistics.fmean(attempts) if attempts else 0.0,
            median_attempts=float(statistics.median(attempts)) if attempts else 0.0,
        ))
    return out


TRAJECTORY_HEADER = ["studentId", "seq", "submittedAt", "status",
                     "witnessLength", "payloadHash", "isDuplicateOfEarlier"]


def payload_hash(payload: str) -> str:
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def export_trajectories(records: list[SubmissionRecord],
                        problem_id: str) -> list[list]:
    """Rows for plotting one problem's submission trajectories.

    All attempts are included (syntax errors flagged by status); rows are
    ordered by (studentId, seq). A non-empty log without the problem raises
    UnknownProblem; an empty log yields no rows (header only downstream).
    """
    mine = [r for r in records if r.problem_id == problem_id]
    if not mine and records:
        raise UnknownProblem(problem_id)
    mine.sort(key=lambda r: (r.student_id, r.seq))
    seen: dict[str, set[str]] = {}
    rows = []
    for r in mine:
        digest = payload_hash(r.payload)
        earlier = seen.setdefault(r.student_id, set())
        duplicate = digest in earlier
        earlier.add(digest)
        witness = r.verdict.get("witness")
        rows.append([
            r.student_id,
            r.seq,
            r.submitted_at,
            r.verdict.get("status", ""),
            len(witness) if witness is not None else "",
            digest,
            "true" if duplicate else "false",
        ])
    return rows


def write_trajectories_csv(rows: list[list], out: TextIO) -> None:
    writer = csv.writer(out)  # csv module implements RFC-4180 quoting
    writer.writerow(TRAJECTORY_HEADER)
    writer.writerows(rows)


def stats_csv(stats: list[PersistenceStats]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["problemId", "studentsWithAttempts", "studentsEndedCorrect",
                     "persistenceRate", "meanAttempts", "medianAttempts"])
    for s in stats:
        writer.writerow([s.problem_id, s.students_with_attempts,
                         s.students_ended_correct, s.persistence_rate,
                         s.mean_attempts, s.median_attempts])
    return buf.getvalue()
