// Per-problem attempt history for the current session (the service only
// exposes per-student listings to instructors, so the student timeline is
// kept client side).

import type { Verdict } from "./types.js";

export interface Attempt {
  seq: number;
  submittedAt: string;
  verdict: Verdict;
  payload: string;
  duplicateOfEarlier: boolean;
}

export class AttemptHistory {
  private byProblem = new Map<string, Attempt[]>();

  record(
    problemId: string,
    seq: number,
    submittedAt: string,
    verdict: Verdict,
    payload: string,
  ): Attempt {
    const attempts = this.byProblem.get(problemId) ?? [];
    const attempt: Attempt = {
      seq,
      submittedAt,
      verdict,
      payload,
      duplicateOfEarlier: attempts.some((a) => a.payload === payload),
    };
    attempts.push(attempt);
    attempts.sort((a, b) => a.seq - b.seq);
    this.byProblem.set(problemId, attempts);
    return attempt;
  }

  /** Attempts for one problem, in seq order. */
  attempts(problemId: string): Attempt[] {
    return [...(this.byProblem.get(problemId) ?? [])];
  }

  solved(problemId: string): boolean {
    const attempts = this.byProblem.get(problemId) ?? [];
    return attempts.length > 0 &&
      attempts[attempts.length - 1].verdict.status === "correct";
  }
}
