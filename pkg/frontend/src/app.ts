// Submit flow: turn a draft + problem into a rendered feedback panel.
// All rendering goes through plain view models so the DOM layer stays a
// dumb template and the logic is testable headless.

import { ApiClient, NetworkError } from "./api.js";
import { DraftError, type Draft } from "./editor.js";
import { AttemptHistory } from "./history.js";
import type { Verdict } from "./types.js";

export type FeedbackView =
  | { kind: "correct"; banner: "Correct!" }
  | {
      kind: "incorrect";
      witness: string;
      witnessDisplay: string;
      acceptedBy: "your submission" | "the reference";
      detail: string;
      boundK?: number;
    }
  | { kind: "syntaxError"; message: string }
  | { kind: "engineLimit"; message: string }
  | { kind: "draftError"; message: string }
  | { kind: "offline"; message: string; canRetry: true };

const EPSILON = "ε";

export function describeVerdict(verdict: Verdict): FeedbackView {
  switch (verdict.status) {
    case "correct":
      return { kind: "correct", banner: "Correct!" };
    case "incorrect": {
      const witness = verdict.witness ?? "";
      const witnessDisplay = witness === "" ? EPSILON : witness;
      const acceptedBy =
        verdict.acceptedBy === "submission"
          ? "your submission"
          : "the reference";
      const rejectedBy =
        verdict.acceptedBy === "submission"
          ? "the reference"
          : "your submission";
      return {
        kind: "incorrect",
        witness,
        witnessDisplay,
        acceptedBy,
        detail:
          `"${witnessDisplay}" is accepted by ${acceptedBy} ` +
          `but not by ${rejectedBy}`,
        boundK: verdict.boundK,
      };
    }
    case "syntaxError":
      return {
        kind: "syntaxError",
        message: verdict.message ?? "the submission did not parse",
      };
    case "engineLimit":
      return {
        kind: "engineLimit",
        message:
          verdict.message ??
          "the checker hit a resource limit; the verdict is unknown",
      };
  }
}

export class SubmitController {
  private pending = new Set<string>();
  readonly history = new AttemptHistory();

  constructor(
    private readonly api: ApiClient,
    public studentId: string,
  ) {}

  isPending(problemId: string): boolean {
    return this.pending.has(problemId);
  }

  /**
   * Serialize the draft and submit it. Never throws: every outcome
   * (including an unserializable draft and a dead network) is a
   * FeedbackView. The draft object is untouched on failure, so the
   * student can fix or retry.
   */
  async submit(problemId: string, draft: Draft): Promise<FeedbackView> {
    if (this.pending.has(problemId)) {
      return {
        kind: "offline",
        message: "a submission is already in flight",
        canRetry: true,
      };
    }
    let payload: string;
    try {
      payload = draft.serialize();
    } catch (err) {
      if (err instanceof DraftError) {
        return { kind: "draftError", message: err.message };
      }
      throw err;
    }
    this.pending.add(problemId);
    try {
      const response = await this.api.submit(
        problemId,
        this.studentId,
        payload,
      );
      this.history.record(
        problemId,
        response.seq,
        response.submittedAt,
        response.verdict,
        payload,
      );
      return describeVerdict(response.verdict);
    } catch (err) {
      if (err instanceof NetworkError) {
        return {
          kind: "offline",
          message: "could not reach the server; your draft is unchanged",
          canRetry: true,
        };
      }
      throw err;
    } finally {
      this.pending.delete(problemId);
    }
  }
}

export interface HistoryRow {
  seq: number;
  submittedAt: string;
  status: Verdict["status"];
  witnessLength: number | null;
  duplicate: boolean;
}

export function historyRows(
  controller: SubmitController,
  problemId: string,
): HistoryRow[] {
  return controller.history.attempts(problemId).map((a) => ({
    seq: a.seq,
    submittedAt: a.submittedAt,
    status: a.verdict.status,
    witnessLength: a.verdict.witness === undefined
      ? null
      : a.verdict.witness.length,
    duplicate: a.duplicateOfEarlier,
  }));
}

export const EMPTY_HISTORY_PROMPT =
  "No attempts yet. Build your model and hit Submit.";
