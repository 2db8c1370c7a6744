// View state and interaction handlers. State-changing requests run strictly
// one at a time; click responses older than the mirrored revision are
// discarded, so the displayed board always equals the newest service state.

import { ApiError, SessionApi, TraceEventDoc } from "./api.js";
import { BoardGrids, MechanicDoc, cloneMechanic, emptyMechanic, parseBoard, serializeBoard } from "./documents.js";
import { Button, KINDS, KindName, cycleColor, cycleKind, kindOf, sanitizeTiles } from "./model.js";

export type Mode = "NORMAL" | "BRUSH";

export interface ViewState {
  sessionId: string;
  revision: number;
  mode: Mode;
  board: BoardGrids;
  mechanic: MechanicDoc;
  selectedRule: number; // 1..9, visual only
  trace: TraceEventDoc[];
  notice: string | null;
  corpusNames: string[];
  lastError: string | null;
  connected: boolean;
}

function describeApiError(err: unknown): string {
  if (err instanceof ApiError) {
    const body = err.body as { detail?: string; code?: string } | null;
    if (body && (body.code || body.detail)) {
      return body.code ? `${body.code}: ${body.detail ?? ""}` : body.detail!;
    }
    return `request failed (${err.status})`;
  }
  return String(err);
}

export class App {
  view: ViewState = {
    sessionId: "",
    revision: -1,
    mode: "NORMAL",
    board: { playground: Array(100).fill(1), memory: Array(9).fill(1) },
    mechanic: emptyMechanic(),
    selectedRule: 1,
    trace: [],
    notice: null,
    corpusNames: [],
    lastError: null,
    connected: false,
  };

  onChange: () => void = () => {};

  private queue: Promise<unknown> = Promise.resolve();

  constructor(private api: SessionApi) {}

  /** Serialize state-changing requests: one in flight at a time. */
  private enqueue<T>(task: () => Promise<T>): Promise<T> {
    const next = this.queue.then(task);
    this.queue = next.catch(() => undefined);
    return next;
  }

  /** Resolves once every queued request has settled. */
  idle(): Promise<void> {
    return this.queue.then(() => undefined);
  }

  private emit(): void {
    this.onChange();
  }

  async start(): Promise<void> {
    const state = await this.api.createSession();
    this.view.sessionId = state.id;
    this.view.revision = state.revision;
    this.view.mode = state.mode;
    this.view.board = parseBoard(state.board);
    this.view.mechanic = state.mechanic;
    this.view.connected = true;
    try {
      this.view.corpusNames = await this.api.corpusNames();
    } catch {
      this.view.corpusNames = [];
    }
    this.emit();
  }

  /** Purely visual; never touches the mechanic or the session. */
  selectRule(index: number): void {
    if (index < 1 || index > 9) throw new Error(`rule index out of range: ${index}`);
    this.view.selectedRule = index;
    this.emit();
  }

  clickPlayground(x: number, y: number): Promise<void> {
    return this.enqueue(async () => {
      this.view.notice = null;
      try {
        const response = await this.api.click(this.view.sessionId, x, y);
        if (response.revision <= this.view.revision) return; // stale
        this.view.revision = response.revision;
        this.view.board = parseBoard(response.board);
        this.view.trace = response.trace;
        this.view.lastError = response.error;
        if (response.error) this.view.notice = `engine: ${response.error}`;
      } catch (err) {
        this.view.notice = describeApiError(err);
      }
      this.emit();
    });
  }

  setMode(mode: Mode): Promise<void> {
    return this.enqueue(async () => {
      try {
        await this.api.setMode(this.view.sessionId, mode);
        this.view.mode = mode;
        this.view.revision += 1;
      } catch (err) {
        this.view.notice = describeApiError(err);
      }
      this.emit();
    });
  }

  loadCorpus(name: string): Promise<void> {
    return this.enqueue(async () => {
      try {
        const entry = await this.api.corpusEntry(name);
        await this.api.putMechanic(this.view.sessionId, entry.mechanic);
        this.view.mechanic = entry.mechanic;
        this.view.revision += 1;
        this.view.notice = `loaded ${name} (${entry.rule_count} rules, ${entry.command_count} commands)`;
      } catch (err) {
        this.view.notice = describeApiError(err);
      }
      this.emit();
    });
  }

  private putMechanicEdit(edit: MechanicDoc, notice: string | null): Promise<void> {
    return this.enqueue(async () => {
      try {
        await this.api.putMechanic(this.view.sessionId, edit);
        this.view.mechanic = edit;
        this.view.revision += 1;
        this.view.notice = notice;
      } catch (err) {
        // edit buffer reverted: the mirrored mechanic was never replaced
        this.view.notice = describeApiError(err);
      }
      this.emit();
    });
  }

  commandKind(ruleIndex: number, commandIndex: number): KindName {
    const doc = this.view.mechanic.rules[ruleIndex - 1]![commandIndex - 1]!;
    return kindOf(doc.family, doc.variation);
  }

  cycleCommandTile(ruleIndex: number, commandIndex: number, tileIndex: number, button: Button): Promise<void> {
    const edit = cloneMechanic(this.view.mechanic);
    const command = edit.rules[ruleIndex - 1]![commandIndex - 1]!;
    const kind = kindOf(command.family, command.variation);
    command.tiles[tileIndex - 1] = cycleColor(kind, command.tiles[tileIndex - 1]!, button);
    return this.putMechanicEdit(edit, null);
  }

  cycleBrushTile(tileIndex: number, button: Button): Promise<void> {
    const edit = cloneMechanic(this.view.mechanic);
    edit.brush.tiles[tileIndex - 1] = cycleColor("WRITE", edit.brush.tiles[tileIndex - 1]!, button);
    return this.putMechanicEdit(edit, null);
  }

  cycleCommandKind(ruleIndex: number, commandIndex: number, button: Button): Promise<void> {
    const edit = cloneMechanic(this.view.mechanic);
    const command = edit.rules[ruleIndex - 1]![commandIndex - 1]!;
    const nextKind = cycleKind(kindOf(command.family, command.variation), button);
    const { tiles, changed } = sanitizeTiles(nextKind, command.tiles);
    command.family = KINDS[nextKind].family;
    command.variation = KINDS[nextKind].variation;
    command.tiles = tiles;
    const notice = changed > 0 ? `reset ${changed} tile${changed > 1 ? "s" : ""} not allowed for ${nextKind}` : null;
    return this.putMechanicEdit(edit, notice);
  }

  /** Memory is editable in BRUSH mode via whole-board replacement. */
  cycleMemoryTile(tileIndex: number, button: Button): Promise<void> {
    if (this.view.mode !== "BRUSH") {
      this.view.notice = "switch to BRUSH mode to edit memory";
      this.emit();
      return Promise.resolve();
    }
    return this.enqueue(async () => {
      const next: BoardGrids = {
        playground: [...this.view.board.playground],
        memory: [...this.view.board.memory],
      };
      const current = next.memory[tileIndex - 1]!;
      next.memory[tileIndex - 1] =
        button === "MIDDLE" ? 1 : ((current - 1 + (button === "LEFT" ? 1 : 8)) % 9) + 1;
      try {
        await this.api.putBoard(this.view.sessionId, serializeBoard(next));
        this.view.board = next;
        this.view.revision += 1;
      } catch (err) {
        this.view.notice = describeApiError(err);
      }
      this.emit();
    });
  }
}
