"""HTTP feedback service: problem registration, submission evaluation with
witness feedback, and append-only submission telemetry.

The service returns verdicts only: unlimited resubmissions, no grades, no
partial credit. Reference solutions are never included in student-facing
responses.
"""

from __future__ import annotations

import datetime as dt
import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException
from pydantic import BaseModel

from . import grammar, pda, regular
from .errors import (
    DavidError,
    EnumerationCapExceeded,
    GrammarBlowupError,
    ParseError,
    SchemaError,
    SearchCapExceeded,
    SelfCheckError,
    StateBlowupError,
    StorageError,
    UnknownProblem,
    ValidationError,
)
from .models import Alphabet, Model
from .parsing import parse_payload

STATUS_CORRECT = "correct"
STATUS_INCORRECT = "incorrect"
STATUS_SYNTAX_ERROR = "syntaxError"
STATUS_ENGINE_LIMIT = "engineLimit"


@dataclass(frozen=True)
class Problem:
    id: str
    model_type: str
    alphabet: Alphabet
    prompt: str
    reference_payload: str
    bound_k: Optional[int]
    created_at: str

    def reference_model(self) -> Model:
        return parse_payload(self.model_type, self.alphabet,
                             self.reference_payload)

    def to_dict(self, include_reference: bool) -> dict:
        out = {
            "id": self.id,
            "modelType": self.model_type,
            "alphabet": list(self.alphabet.symbols),
            "prompt": self.prompt,
            "createdAt": self.created_at,
        }
        if self.bound_k is not None:
            out["boundK"] = self.bound_k
        if include_reference:
            out["reference"] = self.reference_payload
        return out


@dataclass(frozen=True)
class SubmissionRecord:
    problem_id: str
    student_id: str
    seq: int
    payload: str
    verdict: dict
    submitted_at: str

    def to_dict(self) -> dict:
        return {
            "problemId": self.problem_id,
            "studentId": self.student_id,
            "seq": self.seq,
            "payload": self.payload,
            "verdict": self.verdict,
            "submittedAt": self.submitted_at,
        }


def _now() -> str:
    return dt.datetime.now(dt.timezone.utc).isoformat()


def evaluate_submission(problem: Problem, payload: str) -> dict:
    """Stateless evaluation of a raw payload against a problem.

    Every outcome is a verdict dict; parse failures become syntaxError
    verdicts and engine caps become engineLimit.
    """
    try:
        submission = parse_payload(problem.model_type, problem.alphabet, payload)
    except ParseError as e:
        return {"status": STATUS_SYNTAX_ERROR, "message": str(e)}
    except (SchemaError, ValidationError) as e:
        return {"status": STATUS_SYNTAX_ERROR, "message": str(e)}

    reference = problem.reference_model()
    k = problem.bound_k if problem.bound_k is not None else grammar.DEFAULT_BOUND
    try:
        if problem.model_type in ("dfa", "nfa", "regex"):
            result = regular.check_regular(reference, submission)
            if result.equivalent:
                return {"status": STATUS_CORRECT}
            return {
                "status": STATUS_INCORRECT,
                "witness": result.witness,
                "acceptedBy": "reference" if result.in_first else "submission",
            }
        if problem.model_type == "cfg":
            verdict = grammar.bounded_diff(reference.payload, submission.payload, k)
        else:
            verdict = pda.pda_bounded_diff(reference.payload, submission.payload, k)
    except (StateBlowupError, EnumerationCapExceeded, GrammarBlowupError,
            SearchCapExceeded) as e:
        return {"status": STATUS_ENGINE_LIMIT, "message": str(e)}
    if verdict.agrees:
        return {"status": STATUS_CORRECT, "boundK": verdict.bound}
    return {
        "status": STATUS_INCORRECT,
        "witness": verdict.witness,
        "acceptedBy": "reference" if verdict.in_first else "submission",
        "boundK": verdict.bound,
    }


class Store:
    """Problem registry + append-only submission log.

    Problems live in ``problems.json``; submissions are one JSON object per
    line in ``submissions.jsonl``, appended under a lock (and flushed)
    before the HTTP response goes out. The in-memory index is rebuilt from
    the log at startup.
    """

    def __init__(self, data_dir: str):
        self.data_dir = data_dir
        os.makedirs(data_dir, exist_ok=True)
        self._lock = threading.Lock()
        self.problems: dict[str, Problem] = {}
        self.submissions: dict[str, list[SubmissionRecord]] = {}
        self._load()

    @property
    def _problems_path(self) -> str:
        return os.path.join(self.data_dir, "problems.json")

    @property
    def _log_path(self) -> str:
        return os.path.join(self.data_dir, "submissions.jsonl")

    def _load(self) -> None:
        if os.path.exists(self._problems_path):
            with open(self._problems_path, encoding="utf-8") as f:
                for raw in json.load(f):
                    problem = Problem(
                        id=raw["id"],
                        model_type=raw["modelType"],
                        alphabet=Alphabet(tuple(raw["alphabet"])),
                        prompt=raw["prompt"],
                        reference_payload=raw["reference"],
                        bound_k=raw.get("boundK"),
                        created_at=raw["createdAt"],
                    )
                    self.problems[problem.id] = problem
        if os.path.exists(self._log_path):
            with open(self._log_path, encoding="utf-8") as f:
                for line in f:
                    if not line.strip():
                        continue
                    raw = json.loads(line)
                    rec = SubmissionRecord(
                        raw["problemId"], raw["studentId"], raw["seq"],
                        raw["payload"], raw["verdict"], raw["submittedAt"])
                    self.submissions.setdefault(rec.problem_id, []).append(rec)

    def add_problem(self, problem: Problem) -> None:
        with self._lock:
            self.problems[problem.id] = problem
            try:
                with open(self._problems_path, "w", encoding="utf-8") as f:
                    json.dump([p.to_dict(include_reference=True)
                               for p in self.problems.values()], f, indent=2)
            except OSError as e:
                raise StorageError(str(e)) from e

    def record_submission(self, problem_id: str, student_id: str,
                          payload: str, verdict: dict) -> SubmissionRecord:
        """Append a record with an atomically assigned per-(student, problem)
        sequence number; durable before this returns."""
        with self._lock:
            if problem_id not in self.problems:
                raise UnknownProblem(problem_id)
            existing = self.submissions.setdefault(problem_id, [])
            seq = 1 + max(
                (r.seq for r in existing if r.student_id == student_id),
                default=0)
            rec = SubmissionRecord(problem_id, student_id, seq, payload,
                                   verdict, _now())
            try:
                with open(self._log_path, "a", encoding="utf-8") as f:
                    f.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")
                    f.flush()
                    os.fsync(f.fileno())
            except OSError as e:
                raise StorageError(str(e)) from e
            existing.append(rec)
            return rec

    def list_submissions(self, problem_id: str,
                         student_id: Optional[str] = None,
                         status: Optional[str] = None) -> list[SubmissionRecord]:
        if problem_id not in self.problems:
            raise UnknownProblem(problem_id)
        records = self.submissions.get(problem_id, [])
        if student_id is not None:
            records = [r for r in records if r.student_id == student_id]
        if status is not None:
            records = [r for r in records if r.verdict.get("status") == status]
        return sorted(records, key=lambda r: (r.student_id, r.seq))


class ProblemRequest(BaseModel):
    modelType: str
    alphabet: list[str]
    prompt: str
    reference: str
    boundK: Optional[int] = None


class SubmissionRequest(BaseModel):
    studentId: str
    payload: str


def register_problem(store: Store, req: ProblemRequest) -> Problem:
    """Validate, self-check, and persist a new problem."""
    if req.modelType not in ("dfa", "nfa", "regex", "cfg", "pda"):
        raise ValidationError(f"bad model type {req.modelType!r}")
    alphabet = Alphabet(tuple(req.alphabet))
    # must parse
    parse_payload(req.modelType, alphabet, req.reference)
    problem = Problem(
        id=uuid.uuid4().hex[:12],
        model_type=req.modelType,
        alphabet=alphabet,
        prompt=req.prompt,
        reference_payload=req.reference,
        bound_k=req.boundK,
        created_at=_now(),
    )
    verdict = evaluate_submission(problem, req.reference)
    if verdict["status"] != STATUS_CORRECT:
        raise SelfCheckError(
            f"reference failed its self-check: {verdict}")
    store.add_problem(problem)
    return problem


def create_app(data_dir: str, instructor_token: str) -> FastAPI:
    store = Store(data_dir)
    app = FastAPI(title="david-feedback-service")
    app.state.store = store

    def require_instructor(authorization: Optional[str] = Header(None)):
        if authorization != f"Bearer {instructor_token}":
            raise HTTPException(status_code=401, detail="instructor token required")

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/problems", status_code=201,
              dependencies=[Depends(require_instructor)])
    def post_problem(req: ProblemRequest):
        try:
            problem = register_problem(store, req)
        except (ParseError, SchemaError, ValidationError, SelfCheckError) as e:
            raise HTTPException(status_code=422, detail=str(e))
        return problem.to_dict(include_reference=False)

    @app.get("/api/problems")
    def get_problems():
        return [p.to_dict(include_reference=False)
                for p in store.problems.values()]

    @app.get("/api/problems/{problem_id}")
    def get_problem(problem_id: str):
        if problem_id not in store.problems:
            raise HTTPException(status_code=404, detail="unknown problem")
        return store.problems[problem_id].to_dict(include_reference=False)

    @app.post("/api/problems/{problem_id}/submissions")
    def post_submission(problem_id: str, req: SubmissionRequest):
        if problem_id not in store.problems:
            raise HTTPException(status_code=404, detail="unknown problem")
        problem = store.problems[problem_id]
        verdict = evaluate_submission(problem, req.payload)
        rec = store.record_submission(problem_id, req.studentId, req.payload,
                                      verdict)
        return {"verdict": verdict, "seq": rec.seq,
                "submittedAt": rec.submitted_at}

    @app.get("/api/problems/{problem_id}/submissions",
             dependencies=[Depends(require_instructor)])
    def get_submissions(problem_id: str, student: Optional[str] = None,
                        status: Optional[str] = None):
        try:
            records = store.list_submissions(problem_id, student, status)
        except UnknownProblem:
            raise HTTPException(status_code=404, detail="unknown problem")
        return [r.to_dict() for r in records]

    return app


def app_from_env() -> FastAPI:
    """Uvicorn factory entry point (env-configured)."""
    data_dir = os.environ.get("DAVID_DATA_DIR", "./david-data")
    token = os.environ.get("DAVID_INSTRUCTOR_TOKEN", "")
    if not token:
        raise DavidError("DAVID_INSTRUCTOR_TOKEN must be set")
    return create_app(data_dir, token)
