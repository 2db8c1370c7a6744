"""Reference mechanics with independent brute-force oracles.

The mechanics ship as ``.mek`` documents under ``tilemech/assets`` with
stable names; ``load_reference`` decodes them and computes their rule and
command counts from the stored documents. The click-driven references come
with oracle functions written as primitive transcriptions that share no code
with the engine.

Conventions used across the corpus: dark blue (3) is the "piece"/"alive"
color, NEUTRAL is empty, and mechanics that need a known-empty reference
compare against an untouched side tile of the memory grid (commands cannot
name light green directly, since it means "ignore" inside command grids).
Run them against boards whose memory starts all-NEUTRAL.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from .model import (
    BoardState,
    Command,
    Grid,
    Kind,
    MARKER,
    Mechanic,
    NEUTRAL,
    Rule,
)
from .persistence import MECHANIC_SUFFIX, decode_mechanic, encode_mechanic


@dataclass(frozen=True)
class ReferenceMechanic:
    """A packaged mechanic plus its computed size and optional oracle.

    ``oracle_mode`` is "click" (oracle takes a board and a click position)
    or "sweep" (oracle steps the whole playground grid once).
    """

    name: str
    mechanic: Mechanic
    rule_count: int
    command_count: int
    oracle: Callable | None = None
    oracle_mode: str | None = None


def _cmd(kind: Kind, cells: dict[int, int] | None = None) -> Command:
    return Command.sparse(kind, cells or {})


def _build_toggle() -> Mechanic:
    # click a light blue tile: it turns dark blue; and vice versa
    return Mechanic.of(
        "toggle",
        Rule.of(_cmd(Kind.CHECK, {5: 2}), _cmd(Kind.WRITE, {5: 3})),
        Rule.of(_cmd(Kind.CHECK, {5: 3}), _cmd(Kind.WRITE, {5: 2})),
    )


def _build_sliding_move() -> Mechanic:
    # click next to a dark blue piece: it slides onto the clicked side,
    # leaving light blue behind; checks all four cardinal neighbors
    return Mechanic.of(
        "sliding-move",
        Rule.of(
            _cmd(Kind.ROTATE, {2: MARKER, 4: MARKER, 6: MARKER, 8: MARKER}),
            _cmd(Kind.SHIFT, {6: MARKER}),
            _cmd(Kind.CHECK, {5: 3}),
            _cmd(Kind.WRITE, {5: 2, 4: 3}),
        ),
    )


def _build_sokoban_push() -> Mechanic:
    # the clicked tile acts as the pusher: any adjacent dark blue box moves
    # one tile away from the click iff the cell behind it is empty; memory
    # tile 3 is the untouched NEUTRAL reference for the emptiness check
    return Mechanic.of(
        "sokoban-push",
        Rule.of(
            _cmd(Kind.ROTATE, {2: MARKER, 4: MARKER, 6: MARKER, 8: MARKER}),
            _cmd(Kind.SHIFT, {6: MARKER}),
            _cmd(Kind.CHECK, {5: 3}),
            _cmd(Kind.CHECK_WITH_MEMORY, {6: 3}),
            _cmd(Kind.WRITE, {6: 3}),
            _cmd(Kind.CYCLE, {5: 7}),
        ),
    )


def _build_game_of_life() -> Mechanic:
    # drive with sweep(). Memory center counts live neighbors in steps of 2
    # from a base of light blue: n neighbors -> color ((1 + 2n) mod 9) + 1,
    # so 2 -> orange(6) and 3 -> black(8). Rule 1 resets the counter, rule 2
    # counts, rule 3 kills, rule 4 births.
    all_directions = {i: MARKER for i in (1, 2, 3, 4, 6, 7, 8, 9)}
    return Mechanic.of(
        "game-of-life",
        Rule.of(_cmd(Kind.WRITE_TO_MEMORY_INSTANT, {5: 2})),
        Rule.of(
            _cmd(Kind.SHIFT, all_directions),
            _cmd(Kind.CHECK, {5: 3}),
            _cmd(Kind.CYCLE_MEMORY_INSTANT, {5: 2}),
        ),
        Rule.of(
            _cmd(Kind.CHECK, {5: 3}),
            _cmd(Kind.CHECK_MEMORY_NOT, {5: 6}),
            _cmd(Kind.CHECK_MEMORY_NOT, {5: 8}),
            _cmd(Kind.CYCLE, {5: 7}),
        ),
        Rule.of(
            _cmd(Kind.CHECK_WITH_MEMORY, {5: 3}),
            _cmd(Kind.CHECK_MEMORY, {5: 8}),
            _cmd(Kind.WRITE, {5: 3}),
        ),
    )


def _build_nim_subtraction() -> Mechanic:
    # tokens are dark blue in a row; clicking one takes it plus up to two
    # tokens directly to its right — the classic take-1-to-3 move
    take = (_cmd(Kind.CHECK, {5: 3}), _cmd(Kind.CYCLE, {5: 7}))
    step = _cmd(Kind.SHIFT, {6: MARKER})
    return Mechanic.of(
        "nim-subtraction",
        Rule.of(*take, step, *take, step, *take),
    )


def _build_noughts_and_crosses() -> Mechanic:
    # alternating red/yellow marks on empty cells; memory center holds the
    # turn (dark blue = red's turn, yellow = yellow's turn), initialized on
    # the first click; memory tile 2 is the untouched NEUTRAL reference
    return Mechanic.of(
        "noughts-and-crosses",
        Rule.of(
            _cmd(Kind.CHECK_MEMORY_NOT, {5: 3}),
            _cmd(Kind.CHECK_MEMORY_NOT, {5: 5}),
            _cmd(Kind.WRITE_TO_MEMORY_INSTANT, {5: 3}),
        ),
        Rule.of(
            _cmd(Kind.CHECK_MEMORY, {5: 3}),
            _cmd(Kind.CHECK_WITH_MEMORY, {5: 2}),
            _cmd(Kind.WRITE, {5: 4}),
            _cmd(Kind.WRITE_TO_MEMORY, {5: 5}),
        ),
        Rule.of(
            _cmd(Kind.CHECK_MEMORY, {5: 5}),
            _cmd(Kind.CHECK_WITH_MEMORY, {5: 2}),
            _cmd(Kind.WRITE, {5: 5}),
            _cmd(Kind.WRITE_TO_MEMORY, {5: 3}),
        ),
    )


def toggle_oracle(board: BoardState, click: tuple[int, int]) -> BoardState:
    out = board.copy()
    x, y = click
    tile = out.playground.get(x, y)
    if tile == 2:
        out.playground.set(x, y, 3)
    elif tile == 3:
        out.playground.set(x, y, 2)
    return out


def _quarter_turns(x: int, y: int, times: int) -> tuple[int, int]:
    for _ in range(times):
        x, y = -y, x
    return x, y


def sliding_oracle(board: BoardState, click: tuple[int, int]) -> BoardState:
    """Straight-line transcription of the four-direction sliding rule."""
    out = board.copy()
    play = out.playground
    cx, cy = click
    for quarter in range(4):
        dx, dy = _quarter_turns(1, 0, quarter)
        fx, fy = cx + dx, cy + dy
        if play.in_bounds(fx, fy) and play.get(fx, fy) == 3:
            play.set(fx, fy, 2)
            bx, by = _quarter_turns(-1, 0, quarter)
            if play.in_bounds(fx + bx, fy + by):
                play.set(fx + bx, fy + by, 3)
    return out


def sokoban_oracle(board: BoardState, click: tuple[int, int]) -> BoardState:
    """Standard push rule: a box adjacent to the click moves one tile away
    from it iff the destination is on the board and NEUTRAL."""
    out = board.copy()
    play = board.playground
    cx, cy = click
    for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        bx, by = cx + dx, cy + dy
        tx, ty = cx + 2 * dx, cy + 2 * dy
        if (
            play.in_bounds(bx, by)
            and play.get(bx, by) == 3
            and play.in_bounds(tx, ty)
            and play.get(tx, ty) == NEUTRAL
        ):
            out.playground.set(bx, by, NEUTRAL)
            out.playground.set(tx, ty, 3)
    return out


def gol_oracle(grid: Grid) -> Grid:
    """One synchronous B3/S23 step; cells beyond the edge count as dead.

    Dark blue (3) is alive; anything else is dead. Output cells are dark
    blue or NEUTRAL, so feed it boards that use the same convention.
    """
    out = grid.copy()
    for y in range(grid.height):
        for x in range(grid.width):
            neighbors = 0
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    if dx == 0 and dy == 0:
                        continue
                    nx, ny = x + dx, y + dy
                    if grid.in_bounds(nx, ny) and grid.get(nx, ny) == 3:
                        neighbors += 1
            alive = grid.get(x, y) == 3
            if alive:
                out.set(x, y, 3 if neighbors in (2, 3) else NEUTRAL)
            else:
                out.set(x, y, 3 if neighbors == 3 else out.get(x, y))
    return out


_BUILDERS: dict[str, Callable[[], Mechanic]] = {
    "toggle": _build_toggle,
    "sliding-move": _build_sliding_move,
    "sokoban-push": _build_sokoban_push,
    "game-of-life": _build_game_of_life,
    "nim-subtraction": _build_nim_subtraction,
    "noughts-and-crosses": _build_noughts_and_crosses,
}

_ORACLES: dict[str, tuple[Callable, str]] = {
    "toggle": (toggle_oracle, "click"),
    "sliding-move": (sliding_oracle, "click"),
    "sokoban-push": (sokoban_oracle, "click"),
    "game-of-life": (gol_oracle, "sweep"),
}

REFERENCE_NAMES = tuple(_BUILDERS)


def reference_document(name: str) -> str:
    """The shipped ``.mek`` document text for a reference mechanic."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown reference mechanic: {name!r}")
    return (
        resources.files(__package__)
        .joinpath("assets", name + MECHANIC_SUFFIX)
        .read_text(encoding="utf-8")
    )


def load_reference(name: str) -> ReferenceMechanic:
    """Load a packaged reference mechanic by its stable name."""
    mechanic = decode_mechanic(reference_document(name))
    rule_count, command_count = mechanic.counts()
    oracle, mode = _ORACLES.get(name, (None, None))
    return ReferenceMechanic(name, mechanic, rule_count, command_count, oracle, mode)


def write_assets(directory: str | Path | None = None) -> list[Path]:
    """Regenerate the packaged documents from the builders (maintenance)."""
    if directory is None:
        directory = Path(__file__).parent / "assets"
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, builder in _BUILDERS.items():
        path = directory / (name + MECHANIC_SUFFIX)
        path.write_text(encode_mechanic(builder()), encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    for path in write_assets():
        print(path)
