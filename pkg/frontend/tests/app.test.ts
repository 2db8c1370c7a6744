import { describe, expect, it } from "vitest";

import {
  ApiError,
  ClickResponse,
  CorpusEntry,
  SessionApi,
  SessionState,
} from "../src/api.js";
import { App } from "../src/app.js";
import { MechanicDoc, cloneMechanic, emptyMechanic, serializeBoard } from "../src/documents.js";

const NEUTRAL_BOARD = "1111111111\n".repeat(10) + "111\n".repeat(3);

class FakeApi implements SessionApi {
  revision = 0;
  mechanic: MechanicDoc = emptyMechanic();
  boardText = NEUTRAL_BOARD;
  putMechanicCalls: MechanicDoc[] = [];
  putBoardCalls: string[] = [];
  rejectNextPut: ApiError | null = null;
  nextClick: ClickResponse | null = null;
  active = 0;
  maxActive = 0;
  delayMs = 0;

  private async enter<T>(value: T): Promise<T> {
    this.active += 1;
    this.maxActive = Math.max(this.maxActive, this.active);
    if (this.delayMs) await new Promise((resolve) => setTimeout(resolve, this.delayMs));
    this.active -= 1;
    return value;
  }

  async createSession(): Promise<SessionState> {
    return {
      id: "fake",
      revision: this.revision,
      mode: "NORMAL",
      board: this.boardText,
      mechanic: cloneMechanic(this.mechanic),
    };
  }

  async getState(): Promise<SessionState> {
    return this.createSession();
  }

  async click(_id: string, x: number, y: number): Promise<ClickResponse> {
    this.revision += 1;
    const canned = this.nextClick;
    this.nextClick = null;
    return this.enter(
      canned ?? { revision: this.revision, board: this.boardText, trace: [], error: null },
    );
  }

  async putMechanic(_id: string, doc: MechanicDoc): Promise<void> {
    if (this.rejectNextPut) {
      const err = this.rejectNextPut;
      this.rejectNextPut = null;
      throw err;
    }
    this.revision += 1;
    this.putMechanicCalls.push(doc);
    this.mechanic = doc;
    await this.enter(undefined);
  }

  async putBoard(_id: string, boardText: string): Promise<void> {
    this.revision += 1;
    this.putBoardCalls.push(boardText);
    this.boardText = boardText;
    await this.enter(undefined);
  }

  async setMode(): Promise<void> {
    this.revision += 1;
    await this.enter(undefined);
  }

  async corpusNames(): Promise<string[]> {
    return ["toggle"];
  }

  async corpusEntry(name: string): Promise<CorpusEntry> {
    return { name, rule_count: 2, command_count: 4, mechanic: emptyMechanic(name) };
  }
}

async function started(): Promise<{ app: App; api: FakeApi }> {
  const api = new FakeApi();
  const app = new App(api);
  await app.start();
  return { app, api };
}

describe("startup", () => {
  it("mirrors the fresh session", async () => {
    const { app } = await started();
    expect(app.view.sessionId).toBe("fake");
    expect(app.view.revision).toBe(0);
    expect(app.view.board.playground.every((t) => t === 1)).toBe(true);
    expect(app.view.corpusNames).toEqual(["toggle"]);
  });
});

describe("rule index selection", () => {
  it("is visual only: no requests, revision unchanged", async () => {
    const { app, api } = await started();
    app.selectRule(5);
    expect(app.view.selectedRule).toBe(5);
    expect(api.putMechanicCalls).toHaveLength(0);
    expect(app.view.revision).toBe(0);
  });

  it("rejects out-of-range indexes", async () => {
    const { app } = await started();
    expect(() => app.selectRule(0)).toThrow();
    expect(() => app.selectRule(10)).toThrow();
  });
});

describe("command editing", () => {
  it("cycles a tile and PUTs the whole mechanic", async () => {
    const { app, api } = await started();
    await app.cycleCommandTile(1, 1, 5, "LEFT");
    // EMPTY kind only allows neutral, so cycling stays at 1 but still PUTs
    expect(api.putMechanicCalls).toHaveLength(1);

    await app.cycleCommandKind(1, 1, "LEFT"); // EMPTY -> WRITE
    await app.cycleCommandTile(1, 1, 5, "LEFT");
    const last = api.putMechanicCalls.at(-1)!;
    expect(last.rules[0]![0]!.family).toBe("WRITE");
    expect(last.rules[0]![0]!.tiles[4]).toBe(2);
    expect(app.view.mechanic.rules[0]![0]!.tiles[4]).toBe(2);
  });

  it("reverts the edit buffer when the service rejects it", async () => {
    const { app, api } = await started();
    await app.cycleCommandKind(1, 1, "LEFT");
    api.rejectNextPut = new ApiError(422, { code: "INVALID", detail: "tile not allowed" });
    await app.cycleCommandTile(1, 1, 5, "LEFT");
    expect(app.view.mechanic.rules[0]![0]!.tiles[4]).toBe(1); // unchanged
    expect(app.view.notice).toContain("INVALID");
  });

  it("resets disallowed tiles with a notice when the kind changes", async () => {
    const { app } = await started();
    await app.cycleCommandKind(1, 1, "LEFT"); // WRITE
    await app.cycleCommandTile(1, 1, 5, "LEFT"); // center light blue
    await app.cycleCommandKind(1, 1, "RIGHT"); // back to EMPTY: 2 not allowed
    expect(app.view.mechanic.rules[0]![0]!.tiles[4]).toBe(1);
    expect(app.view.notice).toMatch(/reset 1 tile/);
  });

  it("middle click on the header resets the kind to EMPTY", async () => {
    const { app } = await started();
    await app.cycleCommandKind(1, 1, "LEFT");
    await app.cycleCommandKind(1, 1, "LEFT");
    await app.cycleCommandKind(1, 1, "MIDDLE");
    expect(app.view.mechanic.rules[0]![0]!.family).toBe("EMPTY");
  });
});

describe("clicking", () => {
  it("replaces the mirrored board from the response", async () => {
    const { app, api } = await started();
    api.boardText = NEUTRAL_BOARD.replace("1111111111", "1113111111");
    await app.clickPlayground(0, 0);
    expect(app.view.board.playground[3]).toBe(3);
    expect(app.view.revision).toBe(1);
  });

  it("keeps engine errors visible without dropping the board", async () => {
    const { app, api } = await started();
    api.nextClick = { revision: 1, board: NEUTRAL_BOARD, trace: [], error: "BUDGET_EXCEEDED" };
    await app.clickPlayground(0, 0);
    expect(app.view.notice).toContain("BUDGET_EXCEEDED");
    expect(app.view.lastError).toBe("BUDGET_EXCEEDED");
  });

  it("discards stale responses by revision", async () => {
    const { app, api } = await started();
    app.view.revision = 10; // a newer state is already displayed
    api.nextClick = {
      revision: 4,
      board: NEUTRAL_BOARD.replace("1111111111", "9999999999"),
      trace: [],
      error: null,
    };
    await app.clickPlayground(0, 0);
    expect(app.view.revision).toBe(10);
    expect(app.view.board.playground[0]).toBe(1);
  });

  it("serializes state-changing requests", async () => {
    const { app, api } = await started();
    api.delayMs = 5;
    await Promise.all([
      app.clickPlayground(0, 0),
      app.clickPlayground(1, 1),
      app.cycleCommandKind(1, 1, "LEFT"),
      app.clickPlayground(2, 2),
    ]);
    expect(api.maxActive).toBe(1);
  });
});

describe("memory editing", () => {
  it("requires BRUSH mode", async () => {
    const { app, api } = await started();
    await app.cycleMemoryTile(1, "LEFT");
    expect(api.putBoardCalls).toHaveLength(0);
    expect(app.view.notice).toMatch(/BRUSH/);
  });

  it("cycles a memory tile through the palette via board replacement", async () => {
    const { app, api } = await started();
    await app.setMode("BRUSH");
    await app.cycleMemoryTile(1, "LEFT");
    expect(app.view.board.memory[0]).toBe(2);
    await app.cycleMemoryTile(1, "RIGHT");
    await app.cycleMemoryTile(1, "RIGHT");
    expect(app.view.board.memory[0]).toBe(9);
    expect(api.putBoardCalls).toHaveLength(3);
    expect(api.putBoardCalls.at(-1)).toBe(serializeBoard(app.view.board));
  });
});

describe("corpus loading", () => {
  it("replaces the mechanic and reports the size", async () => {
    const { app, api } = await started();
    await app.loadCorpus("toggle");
    expect(api.putMechanicCalls).toHaveLength(1);
    expect(app.view.mechanic.name).toBe("toggle");
    expect(app.view.notice).toMatch(/2 rules/);
  });
});
