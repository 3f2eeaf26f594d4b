import { describe, expect, it } from "vitest";

import { DraftError, GraphEditor, TextDraft, draftFor } from "../src/editor.js";
import type { FaJson, PdaJson } from "../src/types.js";
import { buildCorrectDfa } from "./fixtures.js";

describe("GraphEditor for finite automata", () => {
  it("serializes to the FA JSON schema", () => {
    const doc = JSON.parse(buildCorrectDfa().serialize()) as FaJson;
    expect(doc.type).toBe("dfa");
    expect(doc.alphabet).toEqual(["a", "b"]);
    expect(doc.states).toHaveLength(6);
    expect(doc.start).toBe("none");
    expect(doc.accepting.sort()).toEqual(["two_b", "two_b_a"]);
    expect(doc.transitions).toHaveLength(12);
    expect(doc.transitions[0]).toEqual({ from: "none", read: "a", to: "none" });
  });

  it("roundtrips through fromPayload", () => {
    const payload = buildCorrectDfa().serialize();
    const reimported = GraphEditor.fromPayload(payload, ["a", "b"]);
    expect(reimported.serialize()).toBe(payload);
  });

  it("first added state becomes the start by default", () => {
    const editor = new GraphEditor("nfa", ["a"]);
    const first = editor.addState();
    editor.addState();
    expect(editor.startId).toBe(first.id);
  });

  it("refuses an empty draft with a reason", () => {
    const editor = new GraphEditor("dfa", ["a", "b"]);
    expect(() => editor.serialize()).toThrow(/at least one state/);
  });

  it("refuses duplicate state names", () => {
    const editor = new GraphEditor("dfa", ["a"]);
    const p = editor.addState();
    const q = editor.addState();
    editor.renameState(p.id, "same");
    editor.renameState(q.id, "same");
    expect(() => editor.serialize()).toThrow(/both named "same"/);
  });

  it("refuses epsilon edges in a dfa but allows them in an nfa", () => {
    const dfa = new GraphEditor("dfa", ["a"]);
    const p = dfa.addState();
    dfa.addEdge({ from: p.id, to: p.id, read: null });
    expect(() => dfa.serialize()).toThrow(/epsilon/);

    const nfa = new GraphEditor("nfa", ["a"]);
    const q = nfa.addState();
    nfa.addEdge({ from: q.id, to: q.id, read: null });
    const doc = JSON.parse(nfa.serialize()) as FaJson;
    expect(doc.transitions[0].read).toBeNull();
  });

  it("refuses nondeterminism in a dfa", () => {
    const editor = new GraphEditor("dfa", ["a"]);
    const p = editor.addState();
    const q = editor.addState();
    editor.addEdge({ from: p.id, to: p.id, read: "a" });
    editor.addEdge({ from: p.id, to: q.id, read: "a" });
    expect(() => editor.serialize()).toThrow(/two transitions on "a"/);
  });

  it("refuses symbols outside the alphabet", () => {
    const editor = new GraphEditor("dfa", ["a"]);
    const p = editor.addState();
    editor.addEdge({ from: p.id, to: p.id, read: "z" });
    expect(() => editor.serialize()).toThrow(/not in the alphabet/);
  });

  it("removing a state drops its edges and reassigns the start", () => {
    const editor = new GraphEditor("nfa", ["a"]);
    const p = editor.addState();
    const q = editor.addState();
    editor.addEdge({ from: p.id, to: q.id, read: "a" });
    editor.removeState(p.id);
    expect(editor.edges).toHaveLength(0);
    expect(editor.startId).toBe(q.id);
  });

  it("labels epsilon edges for display", () => {
    const editor = new GraphEditor("nfa", ["a"]);
    const p = editor.addState();
    expect(editor.edgeLabel({ from: p.id, to: p.id, read: null })).toBe("ε");
  });
});

describe("GraphEditor for pushdown automata", () => {
  function smallPda(): GraphEditor {
    const editor = new GraphEditor("pda", ["a", "b"]);
    editor.stackAlphabet = ["Z", "X"];
    const p = editor.addState();
    const q = editor.addState();
    editor.toggleAccepting(q.id);
    editor.addEdge({ from: p.id, to: p.id, read: "a", pop: "Z", push: "XZ" });
    editor.addEdge({ from: p.id, to: q.id, read: "b", pop: "X", push: "" });
    return editor;
  }

  it("serializes the stack fields", () => {
    const doc = JSON.parse(smallPda().serialize()) as PdaJson;
    expect(doc.type).toBe("pda");
    expect(doc.stackAlphabet).toEqual(["Z", "X"]);
    expect(doc.acceptanceMode).toBe("final-state");
    expect(doc.transitions[0]).toEqual({
      from: "q0", read: "a", pop: "Z", push: "XZ", to: "q0",
    });
  });

  it("roundtrips through fromPayload", () => {
    const payload = smallPda().serialize();
    expect(GraphEditor.fromPayload(payload, ["a", "b"]).serialize()).toBe(
      payload,
    );
  });

  it("requires the bottom marker in the stack alphabet", () => {
    const editor = smallPda();
    editor.stackAlphabet = ["X"];
    expect(() => editor.serialize()).toThrow(/bottom marker/);
  });

  it("rejects pushes of undeclared stack symbols", () => {
    const editor = smallPda();
    editor.addEdge({
      from: editor.nodes[0].id, to: editor.nodes[0].id,
      read: null, pop: null, push: "Y",
    });
    expect(() => editor.serialize()).toThrow(/pushes "Y"/);
  });

  it("final-state mode needs an accepting state", () => {
    const editor = smallPda();
    editor.toggleAccepting(editor.nodes[1].id); // un-mark it
    expect(() => editor.serialize()).toThrow(/accepting state/);
    editor.acceptanceMode = "empty-stack";
    expect(() => editor.serialize()).not.toThrow();
  });

  it("renders full transition labels", () => {
    const editor = smallPda();
    expect(editor.edgeLabel(editor.edges[0])).toBe("a, Z / XZ");
    expect(editor.edgeLabel(editor.edges[1])).toBe("b, X / ε");
  });
});

describe("TextDraft", () => {
  it("passes text through", () => {
    const draft = new TextDraft("regex");
    draft.text = "(a+b)*";
    expect(draft.serialize()).toBe("(a+b)*");
  });

  it("flags an empty buffer", () => {
    expect(() => new TextDraft("cfg").serialize()).toThrow(DraftError);
  });
});

describe("draftFor", () => {
  it("picks the editor matching the model type", () => {
    expect(draftFor("regex", ["a"])).toBeInstanceOf(TextDraft);
    expect(draftFor("cfg", ["a"])).toBeInstanceOf(TextDraft);
    expect(draftFor("dfa", ["a"])).toBeInstanceOf(GraphEditor);
    expect(draftFor("pda", ["a"])).toBeInstanceOf(GraphEditor);
  });
});
