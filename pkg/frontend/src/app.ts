// Playground page: configure a session, then play it move by move
// against the engine. One session per page, one in-flight request.

import { Client, ProtocolError, SessionView } from "./protocol.js";
import { formulaExamples, structureExamples } from "./examples.js";
import { buildBoard, moveButtons, statusLine } from "./view.js";

const client = new Client();

let view: SessionView | null = null;
let hintsOn = false;
let busy = false;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setError(message: string | null) {
  const box = el<HTMLDivElement>("error");
  box.textContent = message ?? "";
  box.classList.toggle("hidden", message === null);
}

function shake() {
  const board = el<HTMLDivElement>("board");
  board.classList.remove("shake");
  void board.offsetWidth; // restart the animation
  board.classList.add("shake");
}

function fillExamples() {
  for (const id of ["model-select", "left-select", "right-select"]) {
    const select = el<HTMLSelectElement>(id);
    for (const name of Object.keys(structureExamples)) {
      const opt = document.createElement("option");
      opt.value = name;
      opt.textContent = name;
      select.appendChild(opt);
    }
  }
  const list = el<HTMLDataListElement>("formula-examples");
  for (const f of formulaExamples) {
    const opt = document.createElement("option");
    opt.value = f;
    list.appendChild(opt);
  }
}

function structureFrom(selectId: string, textId: string): unknown {
  const text = el<HTMLTextAreaElement>(textId).value.trim();
  if (text) return JSON.parse(text);
  const name = el<HTMLSelectElement>(selectId).value;
  return structureExamples[name];
}

function configFromForm() {
  const game = el<HTMLSelectElement>("game-kind").value as "eval" | "ef" | "meg";
  const human = el<HTMLSelectElement>("human-role").value as "eloise" | "abelard";
  if (game === "eval") {
    return {
      game, human,
      model: structureFrom("model-select", "model-text"),
      formula: el<HTMLInputElement>("formula").value,
    };
  }
  if (game === "ef") {
    return {
      game, human,
      left: structureFrom("left-select", "left-text"),
      right: structureFrom("right-select", "right-text"),
      rounds: Number(el<HTMLInputElement>("rounds").value),
    };
  }
  return { game, human, formula: el<HTMLInputElement>("formula").value };
}

function renderBoard() {
  const board = el<HTMLDivElement>("board");
  board.innerHTML = "";
  if (!view) return;
  const model = buildBoard(view);
  if (model.kind === "ef") {
    const panels = document.createElement("div");
    panels.className = "panels";
    for (const [title, side] of [["left", model.left], ["right", model.right]] as const) {
      const panel = document.createElement("div");
      panel.className = "panel";
      const heading = document.createElement("h3");
      heading.textContent = `${title} structure`;
      panel.appendChild(heading);
      for (const entry of side) {
        const tag = document.createElement("div");
        tag.className = "element";
        tag.textContent = entry.pairedWith !== null
          ? `${entry.elem}  <->  ${entry.pairedWith}`
          : entry.pending ? `${entry.elem}  (awaiting match)` : entry.elem;
        if (entry.pairedWith !== null) tag.classList.add("paired");
        if (entry.pending) tag.classList.add("pending");
        panel.appendChild(tag);
      }
      panels.appendChild(panel);
    }
    board.appendChild(panels);
    const rounds = document.createElement("p");
    rounds.textContent = `rounds played: ${model.used}`;
    board.appendChild(rounds);
  } else {
    for (const line of model.lines) {
      const p = document.createElement("p");
      p.className = model.kind === "eval" ? "formula" : "position-line";
      p.textContent = line;
      board.appendChild(p);
    }
  }
}

function renderMoves(hints: Record<string, "winning" | "losing"> | null) {
  const zone = el<HTMLDivElement>("moves");
  zone.innerHTML = "";
  if (!view || view.status !== "ongoing" || view.to_move !== view.human) return;
  for (const button of moveButtons(view, hints)) {
    const b = document.createElement("button");
    b.textContent = button.label;
    if (button.hint) b.classList.add(button.hint);
    b.addEventListener("click", () => submitMove(button.move));
    zone.appendChild(b);
  }
}

function renderHistory() {
  const log = el<HTMLUListElement>("history");
  log.innerHTML = "";
  for (const entry of view?.history ?? []) {
    const item = document.createElement("li");
    item.textContent = `${entry.player}: ${entry.move}`;
    log.appendChild(item);
  }
}

async function refresh() {
  if (!view) return;
  view = await client.state(view.id);
  el<HTMLDivElement>("status").textContent = statusLine(view);
  renderBoard();
  renderHistory();
  let hints: Record<string, "winning" | "losing"> | null = null;
  if (hintsOn && view.status === "ongoing" && view.game !== "meg") {
    hints = await client.explain(view.id);
  }
  renderMoves(hints);
}

async function startSession() {
  if (busy) return;
  busy = true;
  setError(null);
  try {
    view = await client.createSession(configFromForm());
    el<HTMLDivElement>("play-area").classList.remove("hidden");
    await refresh();
  } catch (err) {
    view = null;
    setError(err instanceof Error ? err.message : String(err));
  } finally {
    busy = false;
  }
}

async function submitMove(move: string) {
  if (busy || !view) return;
  busy = true;
  setError(null);
  try {
    await client.move(view.id, move);
    await refresh();
  } catch (err) {
    if (err instanceof ProtocolError && err.status === 422) {
      shake(); // rejected: the engine keeps the old state, so just say so
      setError(err.message);
    } else {
      setError(err instanceof Error ? err.message : String(err));
    }
  } finally {
    busy = false;
  }
}

function syncFormVisibility() {
  const game = el<HTMLSelectElement>("game-kind").value;
  el<HTMLDivElement>("eval-inputs").classList.toggle("hidden", game !== "eval");
  el<HTMLDivElement>("ef-inputs").classList.toggle("hidden", game !== "ef");
  el<HTMLDivElement>("formula-row").classList.toggle("hidden", game === "ef");
}

export function init() {
  fillExamples();
  syncFormVisibility();
  el<HTMLSelectElement>("game-kind").addEventListener("change", syncFormVisibility);
  el<HTMLButtonElement>("start").addEventListener("click", () => void startSession());
  el<HTMLInputElement>("hints").addEventListener("change", (e) => {
    hintsOn = (e.target as HTMLInputElement).checked;
    void refresh();
  });
}

if (typeof document !== "undefined" && document.getElementById("start")) {
  init();
}
