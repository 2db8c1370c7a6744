// Command-tile color cycling, mirrored from the engine's core model. This is
// the only game logic the UI computes locally; everything else round-trips
// through the session API. Conformance is pinned by tests/fixtures/cycling.json.

export type Family = "EMPTY" | "WRITE" | "CHECK" | "SHIFT" | "ROTATE" | "CYCLE" | "CALL";
export type Button = "LEFT" | "RIGHT" | "MIDDLE";

export const NEUTRAL = 1;
export const MARKER = 9;

const ALL = [1, 2, 3, 4, 5, 6, 7, 8, 9] as const;
const NO_MARKER = [1, 2, 3, 4, 5, 6, 7, 8] as const;
const MARKER_ONLY = [1, 9] as const;

export const KIND_ORDER = [
  "EMPTY",
  "WRITE",
  "WRITE_TO_MEMORY",
  "WRITE_FROM_MEMORY",
  "WRITE_FROM_PLAYGROUND",
  "WRITE_INSTANT",
  "WRITE_TO_MEMORY_INSTANT",
  "CHECK",
  "CHECK_NOT",
  "CHECK_MEMORY",
  "CHECK_MEMORY_NOT",
  "CHECK_WITH_MEMORY",
  "CHECK_WITH_MEMORY_NOT",
  "SHIFT",
  "ROTATE",
  "CYCLE",
  "CYCLE_INSTANT",
  "CYCLE_MEMORY",
  "CYCLE_MEMORY_INSTANT",
  "CALL",
] as const;

export type KindName = (typeof KIND_ORDER)[number];

export interface KindInfo {
  family: Family;
  variation: string;
  allowed: readonly number[];
}

const FAMILY_COLORS: Record<Family, readonly number[]> = {
  EMPTY: [NEUTRAL],
  WRITE: NO_MARKER,
  CHECK: ALL,
  SHIFT: MARKER_ONLY,
  ROTATE: ALL,
  CYCLE: NO_MARKER,
  CALL: MARKER_ONLY,
};

function kindInfo(name: KindName): KindInfo {
  const cut = name.indexOf("_");
  const family = (cut < 0 ? name : name.slice(0, cut)) as Family;
  const variation = cut < 0 ? "PLAIN" : name.slice(cut + 1);
  return { family, variation, allowed: FAMILY_COLORS[family] };
}

export const KINDS: Record<KindName, KindInfo> = Object.fromEntries(
  KIND_ORDER.map((name) => [name, kindInfo(name)]),
) as Record<KindName, KindInfo>;

export function kindOf(family: string, variation: string): KindName {
  const name = variation === "PLAIN" ? family : `${family}_${variation}`;
  if (!(name in KINDS)) throw new Error(`unknown command type ${family}/${variation}`);
  return name as KindName;
}

export function allowedColors(kind: KindName): readonly number[] {
  return KINDS[kind].allowed;
}

/** Left click steps forward, right click backward, middle click resets. */
export function cycleColor(kind: KindName, current: number, button: Button): number {
  const allowed = KINDS[kind].allowed;
  const pos = allowed.indexOf(current);
  if (pos < 0) throw new Error(`color ${current} not available for ${kind}`);
  if (button === "MIDDLE") return NEUTRAL;
  const step = button === "LEFT" ? 1 : -1;
  return allowed[(pos + step + allowed.length) % allowed.length]!;
}

/** Cycle a command's type through the full ordered family+variation list. */
export function cycleKind(current: KindName, button: Button): KindName {
  if (button === "MIDDLE") return "EMPTY";
  const pos = KIND_ORDER.indexOf(current);
  const step = button === "LEFT" ? 1 : -1;
  return KIND_ORDER[(pos + step + KIND_ORDER.length) % KIND_ORDER.length]!;
}

/** Reset tiles the new kind cannot hold back to NEUTRAL. */
export function sanitizeTiles(kind: KindName, tiles: readonly number[]): { tiles: number[]; changed: number } {
  const allowed = KINDS[kind].allowed;
  let changed = 0;
  const next = tiles.map((t) => {
    if (allowed.includes(t)) return t;
    changed += 1;
    return NEUTRAL;
  });
  return { tiles: next, changed };
}

export const PALETTE: Record<number, string> = {
  1: "#b5e8a9",
  2: "#7ec8e3",
  3: "#1f4e9c",
  4: "#d94436",
  5: "#e8d44d",
  6: "#e8923a",
  7: "#9b59b6",
  8: "#2d2d2d",
  9: "#1e7a34",
};

export const COLOR_NAMES: Record<number, string> = {
  1: "light green",
  2: "light blue",
  3: "dark blue",
  4: "red",
  5: "yellow",
  6: "orange",
  7: "purple",
  8: "black",
  9: "dark green",
};

/** Command outline colors by family (EMPTY shows the neutral outline). */
export const OUTLINE: Record<Family, string> = {
  EMPTY: "#b5e8a9",
  WRITE: "#e8d44d",
  CHECK: "#c39bd3",
  SHIFT: "#1e7a34",
  ROTATE: "#7ec8e3",
  CYCLE: "#e8923a",
  CALL: "#1f4e9c",
};

/** Variation badge shade: PLAIN has none, others darken the outline. */
export function variationBadge(kind: KindName): string {
  const { variation } = KINDS[kind];
  if (variation === "PLAIN") return "";
  return variation
    .split("_")
    .map((word) => word[0])
    .join("");
}
