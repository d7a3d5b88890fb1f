// Session protocol client. The engine owns all game rules; this module
// only moves JSON between the page and the server.

export type Player = "eloise" | "abelard";
export type GameKind = "eval" | "ef" | "meg";
export type Status = "ongoing" | "eloise_won" | "abelard_won" | "truncated";

export interface EvalDisplay {
  formula: string;
  assignment: Record<string, string>;
}

export interface EfDisplay {
  pairs: [string, string][];
  used: number;
  pending: [string, string] | null;
  left_domain: string[];
  right_domain: string[];
}

export interface MegPair {
  formula: string;
  assignment: Record<string, string>;
}

export interface MegDisplay {
  pairs: MegPair[];
  prompt: (MegPair & { kind: string }) | null;
}

export interface SessionView {
  id: string;
  game: GameKind;
  human: Player;
  position: string;
  display: EvalDisplay | EfDisplay | MegDisplay;
  legal_moves: string[];
  to_move: Player | null;
  status: Status;
  machine_moves?: string[];
  history?: { player: Player; move: string }[];
}

export interface SessionConfig {
  game: GameKind;
  human: Player;
  model?: unknown;
  left?: unknown;
  right?: unknown;
  formula?: string;
  rounds?: number;
  max_consts?: number;
  max_steps?: number;
}

export class ProtocolError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function request(base: string, path: string, init?: RequestInit): Promise<any> {
  const res = await fetch(base + path, init);
  const body = await res.json();
  if (!res.ok) {
    throw new ProtocolError(res.status, body.error ?? res.statusText);
  }
  return body;
}

function post(base: string, path: string, payload: unknown): Promise<any> {
  return request(base, path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  });
}

export class Client {
  constructor(readonly base: string = "") {}

  createSession(config: SessionConfig): Promise<SessionView> {
    return post(this.base, "/session", config);
  }

  move(id: string, move: string): Promise<SessionView> {
    return post(this.base, `/session/${id}/move`, { move });
  }

  state(id: string): Promise<SessionView> {
    return request(this.base, `/session/${id}`);
  }

  explain(id: string): Promise<Record<string, "winning" | "losing">> {
    return request(this.base, `/session/${id}/explain`);
  }
}
