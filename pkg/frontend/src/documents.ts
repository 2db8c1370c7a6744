// Wire document shapes and the digit-grid board text format.

export interface CommandDoc {
  family: string;
  variation: string;
  tiles: number[];
}

export interface MechanicDoc {
  format_version: number;
  name: string;
  brush: CommandDoc;
  rules: CommandDoc[][];
}

export interface BoardGrids {
  playground: number[]; // 100 tiles, row-major
  memory: number[]; // 9 tiles, row-major
}

export function emptyCommand(): CommandDoc {
  return { family: "EMPTY", variation: "PLAIN", tiles: Array(9).fill(1) };
}

export function emptyMechanic(name = "untitled"): MechanicDoc {
  return {
    format_version: 1,
    name,
    brush: { family: "WRITE", variation: "PLAIN", tiles: [1, 1, 1, 1, 2, 1, 1, 1, 1] },
    rules: Array.from({ length: 9 }, () => Array.from({ length: 9 }, emptyCommand)),
  };
}

export function cloneMechanic(doc: MechanicDoc): MechanicDoc {
  return JSON.parse(JSON.stringify(doc)) as MechanicDoc;
}

function parseLine(line: string, width: number, lineno: number): number[] {
  if (line.length !== width) {
    throw new Error(`board line ${lineno}: expected ${width} digits, got ${line.length}`);
  }
  return Array.from(line, (ch) => {
    const value = ch.charCodeAt(0) - 48;
    if (value < 1 || value > 9) throw new Error(`board line ${lineno}: bad digit ${ch}`);
    return value;
  });
}

export function parseBoard(text: string): BoardGrids {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length !== 13) throw new Error(`board document: expected 13 lines, got ${lines.length}`);
  const playground: number[] = [];
  for (let y = 0; y < 10; y += 1) playground.push(...parseLine(lines[y]!, 10, y + 1));
  const memory: number[] = [];
  for (let y = 0; y < 3; y += 1) memory.push(...parseLine(lines[10 + y]!, 3, 11 + y));
  return { playground, memory };
}

export function serializeBoard(board: BoardGrids): string {
  const rows: string[] = [];
  for (let y = 0; y < 10; y += 1) rows.push(board.playground.slice(y * 10, y * 10 + 10).join(""));
  for (let y = 0; y < 3; y += 1) rows.push(board.memory.slice(y * 3, y * 3 + 3).join(""));
  return rows.join("\n") + "\n";
}
