// Wire types mirroring the service's JSON schemas.

export type ModelType = "dfa" | "nfa" | "regex" | "cfg" | "pda";

export type VerdictStatus =
  | "correct"
  | "incorrect"
  | "syntaxError"
  | "engineLimit";

export interface Verdict {
  status: VerdictStatus;
  witness?: string;
  acceptedBy?: "reference" | "submission";
  boundK?: number;
  message?: string;
}

export interface Problem {
  id: string;
  modelType: ModelType;
  alphabet: string[];
  prompt: string;
  createdAt: string;
  boundK?: number;
}

export interface SubmissionResponse {
  verdict: Verdict;
  seq: number;
  submittedAt: string;
}

export interface SubmissionRecord {
  problemId: string;
  studentId: string;
  seq: number;
  payload: string;
  verdict: Verdict;
  submittedAt: string;
}

export interface FaTransitionJson {
  from: string;
  read: string | null;
  to: string;
}

export interface FaJson {
  type: "dfa" | "nfa";
  alphabet: string[];
  states: string[];
  start: string;
  accepting: string[];
  transitions: FaTransitionJson[];
}

export interface PdaTransitionJson {
  from: string;
  read: string | null;
  pop: string | null;
  push: string;
  to: string;
}

export interface PdaJson {
  type: "pda";
  alphabet: string[];
  states: string[];
  stackAlphabet: string[];
  start: string;
  accepting: string[];
  acceptanceMode: "final-state" | "empty-stack";
  transitions: PdaTransitionJson[];
}

export function isVerdict(value: unknown): value is Verdict {
  if (typeof value !== "object" || value === null) return false;
  const v = value as Record<string, unknown>;
  return (
    v.status === "correct" ||
    v.status === "incorrect" ||
    v.status === "syntaxError" ||
    v.status === "engineLimit"
  );
}
