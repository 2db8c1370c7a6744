// Plain-DOM view. Every change rebuilds the affected panes; the grids are
// tiny (10x10 board, nine 3x3 command grids) so a full rebuild stays cheap.

import { App } from "./app.js";
import { TraceEventDoc } from "./api.js";
import { Button, COLOR_NAMES, KINDS, OUTLINE, PALETTE, kindOf, variationBadge } from "./model.js";

function buttonOf(event: MouseEvent): Button {
  if (event.button === 1) return "MIDDLE";
  if (event.button === 2) return "RIGHT";
  return "LEFT";
}

type Doc = Document;

function el(doc: Doc, tag: string, className?: string, text?: string): HTMLElement {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function tile(
  doc: Doc,
  color: number,
  handler?: (button: Button) => void,
  attrs?: Record<string, string>,
): HTMLElement {
  const cell = el(doc, "div", "cell");
  cell.style.backgroundColor = PALETTE[color]!;
  cell.dataset.color = String(color);
  cell.title = COLOR_NAMES[color]!;
  for (const [key, value] of Object.entries(attrs ?? {})) cell.dataset[key] = value;
  if (handler) {
    cell.addEventListener("mousedown", (event) => {
      event.preventDefault();
      handler(buttonOf(event as MouseEvent));
    });
    cell.addEventListener("contextmenu", (event) => event.preventDefault());
  }
  return cell;
}

function renderPlayground(doc: Doc, app: App): HTMLElement {
  const pane = el(doc, "div", "playground");
  for (let y = 0; y < 10; y += 1) {
    for (let x = 0; x < 10; x += 1) {
      pane.appendChild(
        tile(doc, app.view.board.playground[y * 10 + x]!, () => void app.clickPlayground(x, y), {
          role: "play",
          x: String(x),
          y: String(y),
        }),
      );
    }
  }
  return pane;
}

function renderMemory(doc: Doc, app: App): HTMLElement {
  const wrap = el(doc, "div", "panel");
  wrap.appendChild(el(doc, "h3", undefined, "memory"));
  const pane = el(doc, "div", "grid3");
  for (let i = 1; i <= 9; i += 1) {
    pane.appendChild(
      tile(doc, app.view.board.memory[i - 1]!, (button) => void app.cycleMemoryTile(i, button), {
        role: "memory",
        index: String(i),
      }),
    );
  }
  wrap.appendChild(pane);
  wrap.appendChild(el(doc, "p", "hint", "editable in BRUSH mode"));
  return wrap;
}

function renderBrush(doc: Doc, app: App): HTMLElement {
  const wrap = el(doc, "div", "panel");
  wrap.appendChild(el(doc, "h3", undefined, "brush"));
  const pane = el(doc, "div", "grid3 command-tiles");
  pane.style.borderColor = OUTLINE.WRITE;
  for (let i = 1; i <= 9; i += 1) {
    pane.appendChild(
      tile(doc, app.view.mechanic.brush.tiles[i - 1]!, (button) => void app.cycleBrushTile(i, button), {
        role: "brush",
        index: String(i),
      }),
    );
  }
  wrap.appendChild(pane);
  return wrap;
}

function renderCommand(doc: Doc, app: App, ruleIndex: number, commandIndex: number): HTMLElement {
  const docCmd = app.view.mechanic.rules[ruleIndex - 1]![commandIndex - 1]!;
  const kind = kindOf(docCmd.family, docCmd.variation);
  const info = KINDS[kind];
  const box = el(doc, "div", "command");
  box.dataset.role = "command";
  box.dataset.command = String(commandIndex);
  box.dataset.kind = kind;

  const header = el(doc, "div", "command-header");
  header.style.backgroundColor = OUTLINE[info.family];
  header.title = `${info.family} / ${info.variation} — click to change type`;
  header.dataset.role = "command-kind";
  header.appendChild(el(doc, "span", "command-number", String(commandIndex)));
  header.appendChild(el(doc, "span", "command-kind", info.family === "EMPTY" ? "—" : info.family));
  const badge = variationBadge(kind);
  if (badge) header.appendChild(el(doc, "span", "command-badge", badge));
  header.addEventListener("mousedown", (event) => {
    event.preventDefault();
    void app.cycleCommandKind(ruleIndex, commandIndex, buttonOf(event as MouseEvent));
  });
  header.addEventListener("contextmenu", (event) => event.preventDefault());
  box.appendChild(header);

  const pane = el(doc, "div", "grid3 command-tiles");
  pane.style.borderColor = OUTLINE[info.family];
  for (let i = 1; i <= 9; i += 1) {
    pane.appendChild(
      tile(doc, docCmd.tiles[i - 1]!, (button) => void app.cycleCommandTile(ruleIndex, commandIndex, i, button), {
        role: "command-tile",
        index: String(i),
      }),
    );
  }
  box.appendChild(pane);
  return box;
}

function renderRuleIndex(doc: Doc, app: App): HTMLElement {
  const wrap = el(doc, "div", "panel");
  wrap.appendChild(el(doc, "h3", undefined, "rules"));
  const pane = el(doc, "div", "grid3 rule-index");
  for (let i = 1; i <= 9; i += 1) {
    const selected = i === app.view.selectedRule;
    const cell = tile(doc, selected ? 9 : 1, () => app.selectRule(i), {
      role: "rule-index",
      index: String(i),
    });
    cell.textContent = String(i);
    cell.classList.toggle("selected", selected);
    pane.appendChild(cell);
  }
  wrap.appendChild(pane);
  wrap.appendChild(el(doc, "p", "hint", "selection is visual only"));
  return wrap;
}

function renderEditor(doc: Doc, app: App): HTMLElement {
  const wrap = el(doc, "div", "panel editor");
  wrap.appendChild(el(doc, "h3", undefined, `rule ${app.view.selectedRule} — commands run in order`));
  const row = el(doc, "div", "command-row");
  for (let c = 1; c <= 9; c += 1) row.appendChild(renderCommand(doc, app, app.view.selectedRule, c));
  wrap.appendChild(row);
  return wrap;
}

function formatEvent(event: TraceEventDoc): string {
  const path = event.path.map(([cmd, branch]) => `${cmd}.${branch}`).join(">");
  const callee = event.callee === null ? "" : ` -> rule ${event.callee}`;
  return `r${event.rule} c${event.command}${path ? ` [${path}]` : ""} ${event.kind} ${event.outcome}${callee}`;
}

function renderTrace(doc: Doc, app: App): HTMLElement {
  const wrap = el(doc, "div", "panel trace");
  wrap.appendChild(el(doc, "h3", undefined, `last click trace (${app.view.trace.length})`));
  const list = el(doc, "ul");
  list.dataset.role = "trace";
  for (const event of app.view.trace.slice(0, 300)) {
    list.appendChild(el(doc, "li", undefined, formatEvent(event)));
  }
  wrap.appendChild(list);
  return wrap;
}

function renderToolbar(doc: Doc, app: App): HTMLElement {
  const bar = el(doc, "div", "toolbar");

  const mode = el(doc, "button", "mode", `mode: ${app.view.mode}`);
  mode.dataset.role = "mode";
  mode.addEventListener("click", () => {
    void app.setMode(app.view.mode === "NORMAL" ? "BRUSH" : "NORMAL");
  });
  bar.appendChild(mode);

  const select = doc.createElement("select");
  select.dataset.role = "corpus-select";
  for (const name of app.view.corpusNames) {
    const option = doc.createElement("option");
    option.value = name;
    option.textContent = name;
    select.appendChild(option);
  }
  bar.appendChild(select);

  const load = el(doc, "button", undefined, "load mechanic");
  load.dataset.role = "corpus-load";
  load.addEventListener("click", () => {
    if (select.value) void app.loadCorpus(select.value);
  });
  bar.appendChild(load);

  const revision = el(doc, "span", "revision", `rev ${app.view.revision}`);
  revision.dataset.role = "revision";
  bar.appendChild(revision);

  return bar;
}

export function render(root: HTMLElement, app: App): void {
  const doc = root.ownerDocument;
  root.textContent = "";

  const notice = el(doc, "div", "notice", app.view.notice ?? "");
  notice.dataset.role = "notice";
  notice.classList.toggle("hidden", app.view.notice === null);

  const layout = el(doc, "div", "layout");

  const left = el(doc, "section", "board-pane");
  left.appendChild(renderToolbar(doc, app));
  left.appendChild(notice);
  left.appendChild(renderPlayground(doc, app));
  const side = el(doc, "div", "side");
  side.appendChild(renderMemory(doc, app));
  side.appendChild(renderBrush(doc, app));
  left.appendChild(side);
  layout.appendChild(left);

  const right = el(doc, "section", "editor-pane");
  right.appendChild(renderRuleIndex(doc, app));
  right.appendChild(renderEditor(doc, app));
  right.appendChild(renderTrace(doc, app));
  layout.appendChild(right);

  root.appendChild(layout);
}
