// Browser entry point. Everything interesting lives in the modules this
// file wires together; this is only DOM plumbing.

import { ApiClient } from "./api.js";
import {
  EMPTY_HISTORY_PROMPT,
  SubmitController,
  historyRows,
  type FeedbackView,
} from "./app.js";
import { GraphEditor, TextDraft, draftFor, type Draft } from "./editor.js";
import { InstructorConsole } from "./instructor.js";
import type { Problem } from "./types.js";

const api = new ApiClient("");
const controller = new SubmitController(
  api,
  localStorage.getItem("studentId") ?? "",
);

let currentProblem: Problem | null = null;
let draft: Draft | null = null;
let selectedNode: string | null = null;

const el = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

function renderProblemList(problems: Problem[]): void {
  const list = el<HTMLUListElement>("problem-list");
  list.replaceChildren();
  for (const problem of problems) {
    const item = document.createElement("li");
    const link = document.createElement("a");
    link.href = "#";
    link.textContent = `[${problem.modelType}] ${problem.prompt}`;
    link.onclick = (ev) => {
      ev.preventDefault();
      void selectProblem(problem);
    };
    item.append(link);
    if (controller.history.solved(problem.id)) {
      item.append(" ✓");
    }
    list.append(item);
  }
}

async function selectProblem(problem: Problem): Promise<void> {
  currentProblem = problem;
  draft = draftFor(problem.modelType, problem.alphabet);
  selectedNode = null;
  el("prompt").textContent =
    `${problem.prompt} (alphabet: ${problem.alphabet.join(", ")})`;
  el("feedback").textContent = "";
  const isText = draft instanceof TextDraft;
  el("text-editor").style.display = isText ? "block" : "none";
  el("graph-editor").style.display = isText ? "none" : "block";
  if (isText) {
    el<HTMLTextAreaElement>("text-input").value = "";
  } else {
    drawGraph();
  }
  renderHistory();
}

function drawGraph(): void {
  if (!(draft instanceof GraphEditor)) return;
  const editor = draft;
  const svg = el<HTMLElement>("canvas");
  const parts: string[] = [];
  for (const edge of editor.edges) {
    const a = editor.nodes.find((n) => n.id === edge.from)!;
    const b = editor.nodes.find((n) => n.id === edge.to)!;
    const mx = (a.x + b.x) / 2;
    const my = (a.y + b.y) / 2 - 8;
    parts.push(
      `<line x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" stroke="#888"/>`,
      `<text x="${mx}" y="${my}" text-anchor="middle">${editor.edgeLabel(edge)}</text>`,
    );
  }
  for (const node of editor.nodes) {
    const ring = node.accepting
      ? `<circle cx="${node.x}" cy="${node.y}" r="22" fill="none" stroke="#333"/>`
      : "";
    const startMark = editor.startId === node.id
      ? `<text x="${node.x - 40}" y="${node.y + 4}">→</text>`
      : "";
    const stroke = selectedNode === node.id ? "#06c" : "#333";
    parts.push(
      startMark,
      `<g data-node="${node.id}">`,
      `<circle cx="${node.x}" cy="${node.y}" r="18" fill="#fff" stroke="${stroke}"/>`,
      ring,
      `<text x="${node.x}" y="${node.y + 4}" text-anchor="middle">${node.label}</text>`,
      `</g>`,
    );
  }
  svg.innerHTML = parts.join("");
  for (const group of svg.querySelectorAll("[data-node]")) {
    (group as SVGGElement).onclick = (ev) => {
      ev.stopPropagation();
      onNodeClick((group as SVGGElement).dataset.node!);
    };
  }
}

function onNodeClick(id: string): void {
  if (!(draft instanceof GraphEditor)) return;
  if (selectedNode !== null && selectedNode !== id) {
    const read = prompt(
      `Transition ${selectedNode} → ${id}: read symbol (empty = ε)`,
    );
    if (read !== null) {
      const edge = { from: selectedNode, to: id, read: read || null };
      if (draft.modelType === "pda") {
        const pop = prompt("pop (empty = nothing)") ?? "";
        const push = prompt("push (top first, empty = nothing)") ?? "";
        draft.addEdge({ ...edge, pop: pop || null, push });
      } else {
        draft.addEdge(edge);
      }
    }
    selectedNode = null;
  } else {
    selectedNode = selectedNode === id ? null : id;
  }
  drawGraph();
}

function renderFeedback(view: FeedbackView): void {
  const box = el("feedback");
  box.className = view.kind;
  switch (view.kind) {
    case "correct":
      box.textContent = view.banner;
      break;
    case "incorrect":
      box.textContent = view.boundK === undefined
        ? view.detail
        : `${view.detail} (checked up to length ${view.boundK})`;
      break;
    default:
      box.textContent = view.message;
  }
}

function renderHistory(): void {
  if (!currentProblem) return;
  const rows = historyRows(controller, currentProblem.id);
  const table = el("history");
  if (rows.length === 0) {
    table.textContent = EMPTY_HISTORY_PROMPT;
    return;
  }
  table.replaceChildren();
  for (const row of rows) {
    const div = document.createElement("div");
    div.className = `attempt ${row.status}`;
    const witness = row.witnessLength === null
      ? ""
      : ` witness length ${row.witnessLength}`;
    const dup = row.duplicate ? " (same as an earlier attempt)" : "";
    div.textContent =
      `#${row.seq} ${row.submittedAt} ${row.status}${witness}${dup}`;
    table.append(div);
  }
}

async function onSubmit(): Promise<void> {
  if (!currentProblem || !draft) return;
  if (draft instanceof TextDraft) {
    draft.text = el<HTMLTextAreaElement>("text-input").value;
  }
  controller.studentId = el<HTMLInputElement>("student-id").value;
  localStorage.setItem("studentId", controller.studentId);
  const button = el<HTMLButtonElement>("submit");
  button.disabled = true;
  try {
    renderFeedback(await controller.submit(currentProblem.id, draft));
  } finally {
    button.disabled = false;
  }
  renderHistory();
}

function wireInstructor(): void {
  el<HTMLButtonElement>("create-problem").onclick = async () => {
    const console_ = new InstructorConsole(
      api,
      el<HTMLInputElement>("token").value,
    );
    const result = await console_.createProblem({
      modelType: el<HTMLSelectElement>("new-type")
        .value as Problem["modelType"],
      alphabet: el<HTMLInputElement>("new-alphabet").value.split(","),
      prompt: el<HTMLInputElement>("new-prompt").value,
      reference: el<HTMLTextAreaElement>("new-reference").value,
    });
    el("instructor-status").textContent = result.ok
      ? `created problem ${result.value.id}`
      : result.authFailure
        ? `auth error: ${result.error}`
        : `rejected: ${result.error}`;
    if (result.ok) renderProblemList(await api.listProblems());
  };
}

async function init(): Promise<void> {
  el<HTMLInputElement>("student-id").value = controller.studentId;
  el<HTMLButtonElement>("submit").onclick = () => void onSubmit();
  el<HTMLButtonElement>("add-state").onclick = () => {
    if (draft instanceof GraphEditor) {
      draft.addState(60 + Math.random() * 360, 50 + Math.random() * 180);
      drawGraph();
    }
  };
  el<HTMLButtonElement>("toggle-accepting").onclick = () => {
    if (draft instanceof GraphEditor && selectedNode !== null) {
      draft.toggleAccepting(selectedNode);
      drawGraph();
    }
  };
  el<HTMLButtonElement>("set-start").onclick = () => {
    if (draft instanceof GraphEditor && selectedNode !== null) {
      draft.setStart(selectedNode);
      drawGraph();
    }
  };
  el<HTMLButtonElement>("delete-state").onclick = () => {
    if (draft instanceof GraphEditor && selectedNode !== null) {
      draft.removeState(selectedNode);
      selectedNode = null;
      drawGraph();
    }
  };
  wireInstructor();
  renderProblemList(await api.listProblems());
}

void init();
