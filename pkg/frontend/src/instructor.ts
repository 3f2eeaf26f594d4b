// Instructor console: problem creation with the service's self-check
// surfaced, and a triage table over recorded submissions.

import { ApiClient, ApiError, NetworkError } from "./api.js";
import type { Problem, SubmissionRecord, VerdictStatus } from "./types.js";
import type { CreateProblemRequest } from "./api.js";

export type ConsoleResult<T> =
  | { ok: true; value: T }
  | { ok: false; error: string; authFailure: boolean };

export class InstructorConsole {
  constructor(
    private readonly api: ApiClient,
    public token: string,
  ) {}

  private failure<T>(err: unknown): ConsoleResult<T> {
    if (err instanceof ApiError) {
      return { ok: false, error: err.detail, authFailure: err.status === 401 };
    }
    if (err instanceof NetworkError) {
      return { ok: false, error: err.message, authFailure: false };
    }
    throw err;
  }

  async createProblem(
    req: CreateProblemRequest,
  ): Promise<ConsoleResult<Problem>> {
    try {
      return { ok: true, value: await this.api.createProblem(req, this.token) };
    } catch (err) {
      return this.failure(err);
    }
  }

  async triage(
    problemId: string,
    filter: { student?: string; status?: VerdictStatus } = {},
  ): Promise<ConsoleResult<SubmissionRecord[]>> {
    try {
      return {
        ok: true,
        value: await this.api.listSubmissions(problemId, this.token, filter),
      };
    } catch (err) {
      return this.failure(err);
    }
  }
}
