// Pure view-model helpers: turn protocol payloads into renderable
// descriptions. No game logic lives here; everything is read off the
// server's own position display and serialized moves.

import type { EfDisplay, EvalDisplay, MegDisplay, SessionView } from "./protocol.js";

export interface MoveButton {
  move: string; // serialized move, sent back verbatim
  label: string;
  hint?: "winning" | "losing";
}

export function describeMove(game: string, move: string): string {
  let parsed: unknown;
  try {
    parsed = JSON.parse(move);
  } catch {
    return move;
  }
  if (game === "ef" && Array.isArray(parsed)) {
    const [side, elem] = parsed as [string, string];
    return side === "L" ? `pick ${elem} on the left` : `pick ${elem} on the right`;
  }
  if (game === "eval") {
    return typeof parsed === "number" ? `branch ${parsed + 1}` : `element ${parsed}`;
  }
  if (game === "ef") {
    return `answer ${parsed}`;
  }
  if (Array.isArray(parsed)) {
    const [kind, ...rest] = parsed as [string, ...unknown[]];
    switch (kind) {
      case "and": return `unfold conjunct ${Number(rest[1]) + 1} of ${rest[0]}`;
      case "or": return `challenge the disjunction ${rest[0]}`;
      case "all": return `instantiate ${rest[0]} with ${rest[1]}`;
      case "ex": return `demand a witness for ${rest[0]}`;
      case "pick": return `choose disjunct ${Number(rest[0]) + 1}`;
      case "wit": return `witness ${rest[0]}`;
    }
  }
  return move;
}

export function moveButtons(
  view: SessionView,
  hints: Record<string, "winning" | "losing"> | null,
): MoveButton[] {
  return view.legal_moves.map((move) => ({
    move,
    label: describeMove(view.game, move),
    hint: hints?.[move],
  }));
}

export function statusLine(view: SessionView): string {
  switch (view.status) {
    case "ongoing":
      return view.to_move === view.human ? "your move" : "machine thinking";
    case "eloise_won":
      return view.human === "eloise" ? "Eloise wins - that is you" : "Eloise (machine) wins";
    case "abelard_won":
      return view.human === "abelard" ? "Abelard wins - that is you" : "Abelard (machine) wins";
    case "truncated":
      return "step budget exhausted";
  }
}

export interface EfBoard {
  kind: "ef";
  left: { elem: string; pairedWith: string | null; pending: boolean }[];
  right: { elem: string; pairedWith: string | null; pending: boolean }[];
  used: number;
}

export interface TextBoard {
  kind: "eval" | "meg";
  lines: string[];
}

export function buildBoard(view: SessionView): EfBoard | TextBoard {
  if (view.game === "ef") {
    const d = view.display as EfDisplay;
    const leftPaired = new Map(d.pairs.map(([a, b]) => [a, b]));
    const rightPaired = new Map(d.pairs.map(([a, b]) => [b, a]));
    return {
      kind: "ef",
      used: d.used,
      left: d.left_domain.map((elem) => ({
        elem,
        pairedWith: leftPaired.get(elem) ?? null,
        pending: d.pending?.[0] === "L" && d.pending?.[1] === elem,
      })),
      right: d.right_domain.map((elem) => ({
        elem,
        pairedWith: rightPaired.get(elem) ?? null,
        pending: d.pending?.[0] === "R" && d.pending?.[1] === elem,
      })),
    };
  }
  if (view.game === "eval") {
    const d = view.display as EvalDisplay;
    const env = Object.entries(d.assignment).map(([v, e]) => `${v} = ${e}`);
    return {
      kind: "eval",
      lines: [d.formula, env.length ? `where ${env.join(", ")}` : "no bindings yet"],
    };
  }
  const d = view.display as MegDisplay;
  const lines = d.pairs.map((p) => {
    const env = Object.entries(p.assignment).map(([v, c]) => `${v}=${c}`).join(", ");
    return env ? `${p.formula}   [${env}]` : p.formula;
  });
  if (d.prompt) {
    lines.push(`>> answer the ${d.prompt.kind === "or" ? "disjunction" : "witness request"}: ${d.prompt.formula}`);
  }
  return { kind: "meg", lines };
}
