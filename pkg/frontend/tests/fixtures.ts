// Shared test fixtures: editor scripts for the "at least two b's, no bb"
// DFA problem and a canned-response fetch stub.

import type { FetchLike } from "../src/api.js";
import { GraphEditor } from "../src/editor.js";

/** Correct solution, authored through the editor API the UI drives. */
export function buildCorrectDfa(): GraphEditor {
  const editor = new GraphEditor("dfa", ["a", "b"]);
  const labels = ["none", "one_b", "one_b_a", "two_b", "two_b_a", "dead"];
  const ids: Record<string, string> = {};
  for (const label of labels) {
    const node = editor.addState(40 * editor.nodes.length, 40);
    editor.renameState(node.id, label);
    ids[label] = node.id;
  }
  editor.setStart(ids.none);
  editor.toggleAccepting(ids.two_b);
  editor.toggleAccepting(ids.two_b_a);
  const moves: Array<[string, string, string]> = [
    ["none", "a", "none"],
    ["none", "b", "one_b"],
    ["one_b", "a", "one_b_a"],
    ["one_b", "b", "dead"],
    ["one_b_a", "a", "one_b_a"],
    ["one_b_a", "b", "two_b"],
    ["two_b", "a", "two_b_a"],
    ["two_b", "b", "dead"],
    ["two_b_a", "a", "two_b_a"],
    ["two_b_a", "b", "two_b"],
    ["dead", "a", "dead"],
    ["dead", "b", "dead"],
  ];
  for (const [from, read, to] of moves) {
    editor.addEdge({ from: ids[from], to: ids[to], read });
  }
  return editor;
}

/** A near miss: forgets the "at least two b's" half of the condition. */
export function buildWrongDfa(): GraphEditor {
  const editor = new GraphEditor("dfa", ["a", "b"]);
  const ok = editor.addState(40, 40);
  const afterB = editor.addState(120, 40);
  const dead = editor.addState(200, 40);
  editor.setStart(ok.id);
  editor.toggleAccepting(ok.id);
  editor.toggleAccepting(afterB.id);
  editor.addEdge({ from: ok.id, to: ok.id, read: "a" });
  editor.addEdge({ from: ok.id, to: afterB.id, read: "b" });
  editor.addEdge({ from: afterB.id, to: ok.id, read: "a" });
  editor.addEdge({ from: afterB.id, to: dead.id, read: "b" });
  editor.addEdge({ from: dead.id, to: dead.id, read: "a" });
  editor.addEdge({ from: dead.id, to: dead.id, read: "b" });
  return editor;
}

export interface RecordedRequest {
  url: string;
  method: string;
  body: string | null;
}

/** Fetch stub answering from a routing function; records every request. */
export function stubFetch(
  route: (req: RecordedRequest) => { status: number; body: unknown },
): { fetchImpl: FetchLike; requests: RecordedRequest[] } {
  const requests: RecordedRequest[] = [];
  const fetchImpl: FetchLike = (url, init) => {
    const request: RecordedRequest = {
      url,
      method: init?.method ?? "GET",
      body: typeof init?.body === "string" ? init.body : null,
    };
    requests.push(request);
    const { status, body } = route(request);
    return Promise.resolve(
      new Response(JSON.stringify(body), {
        status,
        headers: { "Content-Type": "application/json" },
      }),
    );
  };
  return { fetchImpl, requests };
}
