// Thin typed client for the session API; the UI's only backend.

import type { MechanicDoc } from "./documents.js";

export interface TraceEventDoc {
  rule: number;
  command: number;
  path: [number, number][];
  kind: string;
  outcome: string;
  callee: number | null;
}

export interface SessionState {
  id: string;
  revision: number;
  mode: "NORMAL" | "BRUSH";
  board: string;
  mechanic: MechanicDoc;
}

export interface ClickResponse {
  revision: number;
  board: string;
  trace: TraceEventDoc[];
  error: string | null;
}

export interface CorpusEntry {
  name: string;
  rule_count: number;
  command_count: number;
  mechanic: MechanicDoc;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: unknown,
  ) {
    super(`request failed with ${status}`);
  }
}

/** What the app needs from a backend; ApiClient is the real one. */
export interface SessionApi {
  createSession(): Promise<SessionState>;
  getState(id: string): Promise<SessionState>;
  click(id: string, x: number, y: number): Promise<ClickResponse>;
  putMechanic(id: string, doc: MechanicDoc): Promise<void>;
  putBoard(id: string, boardText: string): Promise<void>;
  setMode(id: string, mode: "NORMAL" | "BRUSH"): Promise<void>;
  corpusNames(): Promise<string[]>;
  corpusEntry(name: string): Promise<CorpusEntry>;
}

async function parseBody(response: Response): Promise<unknown> {
  const text = await response.text();
  return text ? JSON.parse(text) : null;
}

export class ApiClient implements SessionApi {
  constructor(private base = "") {}

  private async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) throw new ApiError(response.status, await parseBody(response));
    return parseBody(response);
  }

  createSession(): Promise<SessionState> {
    return this.request("POST", "/api/v1/sessions") as Promise<SessionState>;
  }

  getState(id: string): Promise<SessionState> {
    return this.request("GET", `/api/v1/sessions/${id}`) as Promise<SessionState>;
  }

  click(id: string, x: number, y: number): Promise<ClickResponse> {
    return this.request("POST", `/api/v1/sessions/${id}/click`, { x, y }) as Promise<ClickResponse>;
  }

  async putMechanic(id: string, doc: MechanicDoc): Promise<void> {
    await this.request("PUT", `/api/v1/sessions/${id}/mechanic`, doc);
  }

  async putBoard(id: string, boardText: string): Promise<void> {
    await this.request("PUT", `/api/v1/sessions/${id}/board`, { board: boardText });
  }

  async setMode(id: string, mode: "NORMAL" | "BRUSH"): Promise<void> {
    await this.request("POST", `/api/v1/sessions/${id}/mode`, { mode });
  }

  async corpusNames(): Promise<string[]> {
    const body = (await this.request("GET", "/api/v1/corpus")) as { names: string[] };
    return body.names;
  }

  corpusEntry(name: string): Promise<CorpusEntry> {
    return this.request("GET", `/api/v1/corpus/${name}`) as Promise<CorpusEntry>;
  }
}
