// Thin typed client for the feedback service HTTP API. The fetch
// implementation is injectable so tests can intercept or fake traffic.

import type {
  ModelType,
  Problem,
  SubmissionRecord,
  SubmissionResponse,
} from "./types.js";
import { isVerdict } from "./types.js";

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

/** The service answered with a non-2xx status. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

/** The request never reached the service (offline, refused, timeout). */
export class NetworkError extends Error {
  constructor(cause: unknown) {
    super(`network failure: ${String(cause)}`);
  }
}

export interface CreateProblemRequest {
  modelType: ModelType;
  alphabet: string[];
  prompt: string;
  reference: string;
  boundK?: number;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
    token?: string,
  ): Promise<unknown> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (token !== undefined) headers["Authorization"] = `Bearer ${token}`;
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      throw new NetworkError(cause);
    }
    const text = await response.text();
    if (!response.ok) {
      let detail = text;
      try {
        const parsed = JSON.parse(text) as { detail?: string };
        if (typeof parsed.detail === "string") detail = parsed.detail;
      } catch {
        // leave the raw body as the detail
      }
      throw new ApiError(response.status, detail);
    }
    return text === "" ? undefined : (JSON.parse(text) as unknown);
  }

  async health(): Promise<boolean> {
    const body = (await this.request("GET", "/api/health")) as {
      status?: string;
    };
    return body.status === "ok";
  }

  async listProblems(): Promise<Problem[]> {
    return (await this.request("GET", "/api/problems")) as Problem[];
  }

  async getProblem(id: string): Promise<Problem> {
    return (await this.request(
      "GET",
      `/api/problems/${encodeURIComponent(id)}`,
    )) as Problem;
  }

  async submit(
    problemId: string,
    studentId: string,
    payload: string,
  ): Promise<SubmissionResponse> {
    const body = (await this.request(
      "POST",
      `/api/problems/${encodeURIComponent(problemId)}/submissions`,
      { studentId, payload },
    )) as SubmissionResponse;
    if (!isVerdict(body.verdict)) {
      throw new ApiError(502, "response carried no verdict");
    }
    return body;
  }

  async createProblem(
    req: CreateProblemRequest,
    token: string,
  ): Promise<Problem> {
    return (await this.request(
      "POST",
      "/api/problems",
      req,
      token,
    )) as Problem;
  }

  async listSubmissions(
    problemId: string,
    token: string,
    filter: { student?: string; status?: string } = {},
  ): Promise<SubmissionRecord[]> {
    const params = new URLSearchParams();
    if (filter.student !== undefined) params.set("student", filter.student);
    if (filter.status !== undefined) params.set("status", filter.status);
    const query = params.size > 0 ? `?${params.toString()}` : "";
    return (await this.request(
      "GET",
      `/api/problems/${encodeURIComponent(problemId)}/submissions${query}`,
      undefined,
      token,
    )) as SubmissionRecord[];
  }
}
