"""Core domain model: colors, grids, commands, rules, mechanics.

Everything here is pure data plus a little arithmetic (positional
enumeration, ring rotation, color cycling).  Execution lives in
``tilemech.engine``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

# Color indexes. Index 1 (light green) doubles as "empty / ignore" inside
# command grids; index 9 (dark green) marks directions, rotation amounts and
# call targets.
NEUTRAL = 1
LIGHT_BLUE = 2
DARK_BLUE = 3
RED = 4
YELLOW = 5
ORANGE = 6
PURPLE = 7
BLACK = 8
MARKER = 9

COLORS = (1, 2, 3, 4, 5, 6, 7, 8, 9)

#: Sentinel for playground reads that fall outside the grid. Never equal to
#: any color.
OFF_BOARD = 0

COLOR_NAMES = {
    NEUTRAL: "light green",
    LIGHT_BLUE: "light blue",
    DARK_BLUE: "dark blue",
    RED: "red",
    YELLOW: "yellow",
    ORANGE: "orange",
    PURPLE: "purple",
    BLACK: "black",
    MARKER: "dark green",
}

# Presentation only; nothing in the semantics depends on these.
COLOR_HEX = {
    NEUTRAL: "#b5e8a9",
    LIGHT_BLUE: "#7ec8e3",
    DARK_BLUE: "#1f4e9c",
    RED: "#d94436",
    YELLOW: "#e8d44d",
    ORANGE: "#e8923a",
    PURPLE: "#9b59b6",
    BLACK: "#2d2d2d",
    MARKER: "#1e7a34",
}

PLAYGROUND_SIZE = 10
MEMORY_SIZE = 3

# The nine local offsets of a 3x3 neighborhood, row-major. Offset (0, 0) is
# the center; x grows rightward, y downward.
OFFSETS = tuple((dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1))
CENTER = (0, 0)

# The 8 non-center offsets walked clockwise: NW, N, NE, E, SE, S, SW, W.
RING = ((-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0))
_RING_POS = {off: i for i, off in enumerate(RING)}

NORTH = (0, -1)
EAST = (1, 0)
SOUTH = (0, 1)
WEST = (-1, 0)


def is_color(value: object) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and 1 <= value <= 9


def positional_index(offset: tuple[int, int]) -> int:
    """Row-major enumeration of a 3x3 neighborhood: (-1,-1) -> 1 ... (1,1) -> 9."""
    dx, dy = offset
    if dx not in (-1, 0, 1) or dy not in (-1, 0, 1):
        raise ValueError(f"not a 3x3 offset: {offset!r}")
    return (dy + 1) * 3 + (dx + 1) + 1


def offset_of_index(index: int) -> tuple[int, int]:
    """Inverse of :func:`positional_index`."""
    if not 1 <= index <= 9:
        raise ValueError(f"positional index out of range: {index!r}")
    return OFFSETS[index - 1]


def rotate_offset(offset: tuple[int, int], steps: int) -> tuple[int, int]:
    """Rotate a local offset clockwise in 45-degree increments.

    The center is a fixed point; the 8 ring offsets walk ``steps`` positions
    along the NW, N, NE, E, SE, S, SW, W ring.
    """
    if offset == CENTER:
        return CENTER
    return RING[(_RING_POS[offset] + steps) % 8]


def ring_distance_from_north(offset: tuple[int, int]) -> int:
    """Clockwise ring steps from N to the given non-center offset (N -> 0)."""
    return (_RING_POS[offset] - _RING_POS[NORTH]) % 8


class CycleAction(Enum):
    NEXT = "NEXT"
    PREV = "PREV"
    RESET = "RESET"


def cycle_color(available: tuple[int, ...], current: int, action: CycleAction) -> int:
    """Step ``current`` through ``available`` the way a command-tile click does.

    ``available`` must be ascending and contain NEUTRAL. NEXT/PREV wrap
    around; RESET returns NEUTRAL.
    """
    if current not in available:
        raise ValueError(f"color {current} not available in {available}")
    if action is CycleAction.RESET:
        return NEUTRAL
    pos = available.index(current)
    step = 1 if action is CycleAction.NEXT else -1
    return available[(pos + step) % len(available)]


class Kind(Enum):
    """Command type: a family plus a family-specific variation."""

    EMPTY = ("EMPTY", "PLAIN")
    WRITE = ("WRITE", "PLAIN")
    WRITE_TO_MEMORY = ("WRITE", "TO_MEMORY")
    WRITE_FROM_MEMORY = ("WRITE", "FROM_MEMORY")
    WRITE_FROM_PLAYGROUND = ("WRITE", "FROM_PLAYGROUND")
    WRITE_INSTANT = ("WRITE", "INSTANT")
    WRITE_TO_MEMORY_INSTANT = ("WRITE", "TO_MEMORY_INSTANT")
    CHECK = ("CHECK", "PLAIN")
    CHECK_NOT = ("CHECK", "NOT")
    CHECK_MEMORY = ("CHECK", "MEMORY")
    CHECK_MEMORY_NOT = ("CHECK", "MEMORY_NOT")
    CHECK_WITH_MEMORY = ("CHECK", "WITH_MEMORY")
    CHECK_WITH_MEMORY_NOT = ("CHECK", "WITH_MEMORY_NOT")
    SHIFT = ("SHIFT", "PLAIN")
    ROTATE = ("ROTATE", "PLAIN")
    CYCLE = ("CYCLE", "PLAIN")
    CYCLE_INSTANT = ("CYCLE", "INSTANT")
    CYCLE_MEMORY = ("CYCLE", "MEMORY")
    CYCLE_MEMORY_INSTANT = ("CYCLE", "MEMORY_INSTANT")
    CALL = ("CALL", "PLAIN")

    @property
    def family(self) -> str:
        return self.value[0]

    @property
    def variation(self) -> str:
        return self.value[1]


KIND_BY_TAGS = {kind.value: kind for kind in Kind}

#: Editing order for cycling a command's type in a UI: EMPTY first, then the
#: families in their documented order, variations in listing order.
KIND_ORDER = (
    Kind.EMPTY,
    Kind.WRITE,
    Kind.WRITE_TO_MEMORY,
    Kind.WRITE_FROM_MEMORY,
    Kind.WRITE_FROM_PLAYGROUND,
    Kind.WRITE_INSTANT,
    Kind.WRITE_TO_MEMORY_INSTANT,
    Kind.CHECK,
    Kind.CHECK_NOT,
    Kind.CHECK_MEMORY,
    Kind.CHECK_MEMORY_NOT,
    Kind.CHECK_WITH_MEMORY,
    Kind.CHECK_WITH_MEMORY_NOT,
    Kind.SHIFT,
    Kind.ROTATE,
    Kind.CYCLE,
    Kind.CYCLE_INSTANT,
    Kind.CYCLE_MEMORY,
    Kind.CYCLE_MEMORY_INSTANT,
    Kind.CALL,
)

_ALL = COLORS
_NO_MARKER = (1, 2, 3, 4, 5, 6, 7, 8)
_MARKER_ONLY = (1, 9)

_ALLOWED = {
    "EMPTY": (NEUTRAL,),
    "WRITE": _NO_MARKER,
    "CHECK": _ALL,
    "SHIFT": _MARKER_ONLY,
    "ROTATE": _ALL,
    "CYCLE": _NO_MARKER,
    "CALL": _MARKER_ONLY,
}


def allowed_colors(kind: Kind) -> tuple[int, ...]:
    """The ascending color set a command tile of this kind may take."""
    return _ALLOWED[kind.family]


_NEUTRAL_TILES = (NEUTRAL,) * 9


@dataclass(frozen=True)
class Command:
    """A typed 3x3 grid of color indexes, row-major."""

    kind: Kind = Kind.EMPTY
    tiles: tuple[int, ...] = _NEUTRAL_TILES

    def __post_init__(self) -> None:
        if len(self.tiles) != 9:
            raise ValueError(f"command needs 9 tiles, got {len(self.tiles)}")
        for t in self.tiles:
            if not is_color(t):
                raise ValueError(f"invalid tile color: {t!r}")

    @classmethod
    def sparse(cls, kind: Kind, cells: dict[int, int] | None = None) -> Command:
        """Build a command from a {positional index: color} mapping."""
        tiles = list(_NEUTRAL_TILES)
        for index, color in (cells or {}).items():
            tiles[index - 1] = color
        return cls(kind, tuple(tiles))

    def tile(self, offset: tuple[int, int]) -> int:
        return self.tiles[positional_index(offset) - 1]

    def is_empty(self) -> bool:
        return self.kind is Kind.EMPTY


EMPTY_COMMAND = Command()


@dataclass(frozen=True)
class Rule:
    """An ordered list of exactly 9 commands."""

    commands: tuple[Command, ...] = (EMPTY_COMMAND,) * 9

    def __post_init__(self) -> None:
        if len(self.commands) != 9:
            raise ValueError(f"rule needs 9 commands, got {len(self.commands)}")

    @classmethod
    def of(cls, *commands: Command) -> Rule:
        """Build a rule from up to 9 leading commands, padding with EMPTY."""
        if len(commands) > 9:
            raise ValueError("a rule holds at most 9 commands")
        return cls(tuple(commands) + (EMPTY_COMMAND,) * (9 - len(commands)))


EMPTY_RULE = Rule()

DEFAULT_BRUSH = Command.sparse(Kind.WRITE, {5: LIGHT_BLUE})


@dataclass(frozen=True)
class Mechanic:
    """A design artifact: 9 rules of 9 commands plus a paint brush."""

    name: str = "untitled"
    rules: tuple[Rule, ...] = (EMPTY_RULE,) * 9
    brush: Command = DEFAULT_BRUSH

    def __post_init__(self) -> None:
        if len(self.rules) != 9:
            raise ValueError(f"mechanic needs 9 rules, got {len(self.rules)}")

    @classmethod
    def of(cls, name: str, *rules: Rule, brush: Command = DEFAULT_BRUSH) -> Mechanic:
        if len(rules) > 9:
            raise ValueError("a mechanic holds at most 9 rules")
        return cls(name, tuple(rules) + (EMPTY_RULE,) * (9 - len(rules)), brush)

    def rule(self, index: int) -> Rule:
        """Rule by 1-based index."""
        return self.rules[index - 1]

    def counts(self) -> tuple[int, int]:
        """(rules actually used, non-EMPTY commands) — computed, not declared."""
        used_rules = 0
        commands = 0
        for rule in self.rules:
            in_rule = sum(1 for c in rule.commands if not c.is_empty())
            commands += in_rule
            if in_rule:
                used_rules += 1
        return used_rules, commands


class Grid:
    """A width x height grid of color indexes, row-major, (0, 0) top-left."""

    __slots__ = ("width", "height", "tiles")

    def __init__(self, width: int, height: int, tiles: list[int] | None = None):
        if width < 1 or height < 1:
            raise ValueError("grid dimensions must be positive")
        if tiles is None:
            tiles = [NEUTRAL] * (width * height)
        if len(tiles) != width * height:
            raise ValueError(f"expected {width * height} tiles, got {len(tiles)}")
        for t in tiles:
            if not is_color(t):
                raise ValueError(f"invalid tile color: {t!r}")
        self.width = width
        self.height = height
        self.tiles = list(tiles)

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def get(self, x: int, y: int) -> int:
        if not self.in_bounds(x, y):
            raise IndexError(f"({x}, {y}) outside {self.width}x{self.height} grid")
        return self.tiles[y * self.width + x]

    def set(self, x: int, y: int, color: int) -> None:
        if not self.in_bounds(x, y):
            raise IndexError(f"({x}, {y}) outside {self.width}x{self.height} grid")
        if not is_color(color):
            raise ValueError(f"invalid tile color: {color!r}")
        self.tiles[y * self.width + x] = color

    def copy(self) -> Grid:
        clone = Grid.__new__(Grid)
        clone.width = self.width
        clone.height = self.height
        clone.tiles = list(self.tiles)
        return clone

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Grid)
            and self.width == other.width
            and self.height == other.height
            and self.tiles == other.tiles
        )

    def __hash__(self):
        return hash((self.width, self.height, tuple(self.tiles)))

    def __repr__(self) -> str:
        rows = [
            "".join(str(t) for t in self.tiles[y * self.width : (y + 1) * self.width])
            for y in range(self.height)
        ]
        return f"Grid({self.width}x{self.height}, {'|'.join(rows)})"


class BoardState:
    """The whole mutable game state: 10x10 playground plus 3x3 memory."""

    __slots__ = ("playground", "memory")

    def __init__(self, playground: Grid | None = None, memory: Grid | None = None):
        playground = playground if playground is not None else Grid(PLAYGROUND_SIZE, PLAYGROUND_SIZE)
        memory = memory if memory is not None else Grid(MEMORY_SIZE, MEMORY_SIZE)
        if (playground.width, playground.height) != (PLAYGROUND_SIZE, PLAYGROUND_SIZE):
            raise ValueError("playground must be 10x10")
        if (memory.width, memory.height) != (MEMORY_SIZE, MEMORY_SIZE):
            raise ValueError("memory must be 3x3")
        self.playground = playground
        self.memory = memory

    @classmethod
    def neutral(cls) -> BoardState:
        return cls()

    def copy(self) -> BoardState:
        clone = BoardState.__new__(BoardState)
        clone.playground = self.playground.copy()
        clone.memory = self.memory.copy()
        return clone

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BoardState)
            and self.playground == other.playground
            and self.memory == other.memory
        )

    def __hash__(self):
        return hash((self.playground, self.memory))

    def __repr__(self) -> str:
        return f"BoardState({self.playground!r}, {self.memory!r})"


@dataclass(frozen=True)
class Focus:
    """The positioned, rotated 3x3 lens commands look through.

    The position may legally lie outside the playground; reads there come
    back as OFF_BOARD and writes are dropped.
    """

    x: int
    y: int
    rotation: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.rotation <= 7:
            raise ValueError(f"rotation out of range: {self.rotation}")

    @property
    def position(self) -> tuple[int, int]:
        return (self.x, self.y)

    def moved(self, dx: int, dy: int) -> Focus:
        return Focus(self.x + dx, self.y + dy, self.rotation)

    def rotated(self, steps: int) -> Focus:
        return Focus(self.x, self.y, (self.rotation + steps) % 8)


@dataclass(frozen=True)
class Violation:
    """One invariant violation, pinned to rule / command / tile.

    ``rule`` is a 1-based rule index, or None when the brush is at fault.
    """

    message: str
    rule: int | None = None
    command: int | None = None
    tile: tuple[int, int] | None = None

    def __str__(self) -> str:
        where = []
        if self.rule is not None:
            where.append(f"rule {self.rule}")
        elif self.command is not None or self.tile is not None:
            where.append("brush")
        if self.command is not None:
            where.append(f"command {self.command}")
        if self.tile is not None:
            where.append(f"tile {self.tile}")
        prefix = ", ".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message


def validate_command(command: Command) -> list[tuple[tuple[int, int] | None, str]]:
    """Kind-specific tile constraints; returns (tile offset, message) pairs."""
    problems: list[tuple[tuple[int, int] | None, str]] = []
    allowed = set(allowed_colors(command.kind))
    markers = 0
    for i, color in enumerate(command.tiles):
        offset = OFFSETS[i]
        if color == MARKER:
            markers += 1
        if color not in allowed:
            problems.append(
                (
                    offset,
                    f"color {color} ({COLOR_NAMES[color]}) not allowed in "
                    f"{command.kind.family} commands",
                )
            )
    if command.kind is Kind.CALL and markers > 1:
        problems.append((None, f"CALL allows at most one marker tile, found {markers}"))
    return problems


def validate_mechanic(mechanic: Mechanic) -> list[Violation]:
    """Every invariant violation in the mechanic; empty list means valid."""
    violations: list[Violation] = []
    for r, rule in enumerate(mechanic.rules, start=1):
        for c, command in enumerate(rule.commands, start=1):
            for tile, message in validate_command(command):
                violations.append(Violation(message, rule=r, command=c, tile=tile))
    brush = mechanic.brush
    if brush.kind is not Kind.WRITE:
        violations.append(Violation(f"brush must be a plain WRITE command, got {brush.kind.name}"))
        brush = Command(Kind.WRITE, brush.tiles)
    for tile, message in validate_command(brush):
        violations.append(Violation(message, tile=tile))
    return violations
