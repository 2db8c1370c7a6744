"""Shared builders, random generators and independent oracles for the tests.

The oracles here are deliberately primitive (straight-line transcriptions,
brute-force neighbor counting) and share no code with the engine paths they
check.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from tilemech.model import (
    BoardState,
    Command,
    Grid,
    Kind,
    MARKER,
    Mechanic,
    NEUTRAL,
    Rule,
    allowed_colors,
)


def sparse(kind: Kind, cells: dict[int, int] | None = None) -> Command:
    return Command.sparse(kind, cells or {})


def mech(*rules: Rule, name: str = "test") -> Mechanic:
    return Mechanic.of(name, *rules)


def board_with(cells: dict[tuple[int, int], int], memory: dict[tuple[int, int], int] | None = None) -> BoardState:
    board = BoardState.neutral()
    for (x, y), color in cells.items():
        board.playground.set(x, y, color)
    for (x, y), color in (memory or {}).items():
        board.memory.set(x, y, color)
    return board


def toggle_mechanic() -> Mechanic:
    return mech(
        Rule.of(sparse(Kind.CHECK, {5: 2}), sparse(Kind.WRITE, {5: 3})),
        Rule.of(sparse(Kind.CHECK, {5: 3}), sparse(Kind.WRITE, {5: 2})),
        name="toggle",
    )


def sliding_mechanic() -> Mechanic:
    return mech(
        Rule.of(
            sparse(Kind.ROTATE, {2: MARKER, 4: MARKER, 6: MARKER, 8: MARKER}),
            sparse(Kind.SHIFT, {6: MARKER}),
            sparse(Kind.CHECK, {5: 3}),
            sparse(Kind.WRITE, {5: 2, 4: 3}),
        ),
        name="sliding-move",
    )


def _rot90cw(x: int, y: int, times: int) -> tuple[int, int]:
    for _ in range(times):
        x, y = -y, x
    return x, y


def sliding_oracle(board: BoardState, click: tuple[int, int]) -> BoardState:
    """Straight-line transcription of the four-direction sliding rule.

    For each quarter turn: move one step right (in the turned frame); if that
    tile is dark blue, paint it light blue and paint the tile behind it dark
    blue. Immediate writes.
    """
    out = board.copy()
    play = out.playground
    cx, cy = click
    for quarter in range(4):
        dx, dy = _rot90cw(1, 0, quarter)
        fx, fy = cx + dx, cy + dy
        if play.in_bounds(fx, fy) and play.get(fx, fy) == 3:
            play.set(fx, fy, 2)
            bx, by = _rot90cw(-1, 0, quarter)
            wx, wy = fx + bx, fy + by
            if play.in_bounds(wx, wy):
                play.set(wx, wy, 3)
    return out


def toggle_oracle(board: BoardState, click: tuple[int, int]) -> BoardState:
    out = board.copy()
    x, y = click
    tile = out.playground.get(x, y)
    if tile == 2:
        out.playground.set(x, y, 3)
    elif tile == 3:
        out.playground.set(x, y, 2)
    return out


def random_board(rng: random.Random, colors=tuple(range(1, 10))) -> BoardState:
    play = Grid(10, 10, [rng.choice(colors) for _ in range(100)])
    return BoardState(play, Grid(3, 3))


def random_command(rng: random.Random) -> Command:
    kind = rng.choice(list(Kind))
    if kind is Kind.CALL:
        tiles = [NEUTRAL] * 9
        if rng.random() < 0.7:
            tiles[rng.randrange(9)] = MARKER
        return Command(kind, tuple(tiles))
    colors = allowed_colors(kind)
    tiles = tuple(
        rng.choice(colors) if rng.random() < 0.4 else NEUTRAL for _ in range(9)
    )
    return Command(kind, tiles)


def random_mechanic(rng: random.Random, max_commands_per_rule: int = 4) -> Mechanic:
    rules = []
    for _ in range(9):
        count = rng.randrange(max_commands_per_rule + 1)
        rules.append(Rule.of(*(random_command(rng) for _ in range(count))))
    brush_tiles = tuple(rng.choice(allowed_colors(Kind.WRITE)) for _ in range(9))
    return Mechanic("random", tuple(rules), Command(Kind.WRITE, brush_tiles))


# hypothesis strategies -----------------------------------------------------

def command_tiles(kind: Kind):
    colors = allowed_colors(kind)
    neutral_biased = st.one_of(st.just(NEUTRAL), st.sampled_from(colors))
    return st.tuples(*[neutral_biased] * 9)


@st.composite
def commands_st(draw) -> Command:
    kind = draw(st.sampled_from(list(Kind)))
    if kind is Kind.CALL:
        tiles = [NEUTRAL] * 9
        if draw(st.booleans()):
            tiles[draw(st.integers(0, 8))] = MARKER
        return Command(kind, tuple(tiles))
    return Command(kind, draw(command_tiles(kind)))


@st.composite
def mechanics_st(draw) -> Mechanic:
    n_rules = draw(st.integers(0, 3))
    rules = []
    for _ in range(n_rules):
        n_cmds = draw(st.integers(0, 4))
        rules.append(Rule.of(*[draw(commands_st()) for _ in range(n_cmds)]))
    return Mechanic.of("generated", *rules)


@st.composite
def boards_st(draw) -> BoardState:
    play = Grid(10, 10, draw(st.lists(st.integers(1, 9), min_size=100, max_size=100)))
    mem = Grid(3, 3, draw(st.lists(st.integers(1, 9), min_size=9, max_size=9)))
    return BoardState(play, mem)
