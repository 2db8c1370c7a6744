"""Versioned, canonical serialization for mechanics and boards.

Mechanics travel as JSON documents (``.mek``), boards as plain digit grids
(``.mekboard``). Encoding is canonical: fixed key order, fixed whitespace,
LF endings — two encodings of equal values are byte-identical.
"""

from __future__ import annotations

import json

from .model import (
    BoardState,
    Command,
    Grid,
    KIND_BY_TAGS,
    Kind,
    MEMORY_SIZE,
    Mechanic,
    PLAYGROUND_SIZE,
    Rule,
    Violation,
    validate_mechanic,
)

FORMAT_VERSION = 1

MECHANIC_SUFFIX = ".mek"
BOARD_SUFFIX = ".mekboard"


class DocumentError(ValueError):
    """A document failed to decode."""


class UnknownVersionError(DocumentError):
    def __init__(self, version: object):
        super().__init__(f"unsupported format_version: {version!r}")
        self.version = version


class MalformedError(DocumentError):
    """Structurally broken document; ``where`` names the offending spot."""

    def __init__(self, where: str, problem: str):
        super().__init__(f"{where}: {problem}")
        self.where = where
        self.problem = problem


class InvalidMechanicError(DocumentError):
    """Well-formed document describing a mechanic that breaks invariants."""

    def __init__(self, violations: list[Violation]):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = violations


def _encode_command(command: Command) -> str:
    tiles = ", ".join(str(t) for t in command.tiles)
    return (
        f'{{"family": "{command.kind.family}", '
        f'"variation": "{command.kind.variation}", '
        f'"tiles": [{tiles}]}}'
    )


def encode_mechanic(mechanic: Mechanic) -> str:
    """Canonical text document for a mechanic: fixed key order, one line per
    command, so equal mechanics yield byte-identical documents."""
    lines = [
        "{",
        f'  "format_version": {FORMAT_VERSION},',
        f'  "name": {json.dumps(mechanic.name)},',
        f'  "brush": {_encode_command(mechanic.brush)},',
        '  "rules": [',
    ]
    for r, rule in enumerate(mechanic.rules):
        lines.append("    [")
        for c, command in enumerate(rule.commands):
            comma = "," if c < 8 else ""
            lines.append(f"      {_encode_command(command)}{comma}")
        lines.append("    ]," if r < 8 else "    ]")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _decode_command(obj: object, where: str) -> Command:
    if not isinstance(obj, dict):
        raise MalformedError(where, "command must be an object")
    extra = set(obj) - {"family", "variation", "tiles"}
    if extra:
        raise MalformedError(where, f"unknown keys: {sorted(extra)}")
    for key in ("family", "variation", "tiles"):
        if key not in obj:
            raise MalformedError(where, f"missing key: {key}")
    kind = KIND_BY_TAGS.get((obj["family"], obj["variation"]))
    if kind is None:
        raise MalformedError(where, f"unknown command type: {obj['family']}/{obj['variation']}")
    tiles = obj["tiles"]
    if not isinstance(tiles, list) or len(tiles) != 9:
        raise MalformedError(f"{where}.tiles", "expected a list of 9 color indexes")
    for i, t in enumerate(tiles):
        if not isinstance(t, int) or isinstance(t, bool) or not 1 <= t <= 9:
            raise MalformedError(f"{where}.tiles[{i}]", f"color index out of range: {t!r}")
    return Command(kind, tuple(tiles))


def decode_mechanic(text: str) -> Mechanic:
    """Parse and fully validate a mechanic document.

    Raises UnknownVersionError, MalformedError (position-precise) or
    InvalidMechanicError (with the full violation list).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedError(f"line {err.lineno}", err.msg) from err
    if not isinstance(doc, dict):
        raise MalformedError("document", "top level must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise UnknownVersionError(version)
    extra = set(doc) - {"format_version", "name", "brush", "rules"}
    if extra:
        raise MalformedError("document", f"unknown keys: {sorted(extra)}")
    for key in ("name", "brush", "rules"):
        if key not in doc:
            raise MalformedError("document", f"missing key: {key}")
    if not isinstance(doc["name"], str):
        raise MalformedError("name", "must be a string")
    brush = _decode_command(doc["brush"], "brush")
    rules_obj = doc["rules"]
    if not isinstance(rules_obj, list) or len(rules_obj) != 9:
        raise MalformedError("rules", "expected a list of 9 rules")
    rules = []
    for r, rule_obj in enumerate(rules_obj):
        if not isinstance(rule_obj, list) or len(rule_obj) != 9:
            raise MalformedError(f"rules[{r}]", "expected a list of 9 commands")
        commands = tuple(
            _decode_command(cmd_obj, f"rules[{r}][{c}]") for c, cmd_obj in enumerate(rule_obj)
        )
        rules.append(Rule(commands))
    mechanic = Mechanic(doc["name"], tuple(rules), brush)
    violations = validate_mechanic(mechanic)
    if violations:
        raise InvalidMechanicError(violations)
    return mechanic


def _encode_grid(grid: Grid) -> list[str]:
    return [
        "".join(str(t) for t in grid.tiles[y * grid.width : (y + 1) * grid.width])
        for y in range(grid.height)
    ]


def encode_board(board: BoardState) -> str:
    """Digit-grid text: 10 playground lines then 3 memory lines."""
    return "\n".join(_encode_grid(board.playground) + _encode_grid(board.memory)) + "\n"


def _decode_line(line: str, width: int, lineno: int) -> list[int]:
    if len(line) != width:
        raise MalformedError(f"line {lineno}", f"expected {width} digits, got {len(line)}")
    tiles = []
    for ch in line:
        if ch < "1" or ch > "9":
            raise MalformedError(f"line {lineno}", f"invalid color digit: {ch!r}")
        tiles.append(int(ch))
    return tiles


def decode_board(text: str) -> BoardState:
    """Parse a board document; rejects anything but 10x10 + 3x3 digit rows."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) != PLAYGROUND_SIZE + MEMORY_SIZE:
        raise MalformedError("document", f"expected 13 lines, got {len(lines)}")
    play_tiles: list[int] = []
    for y in range(PLAYGROUND_SIZE):
        play_tiles.extend(_decode_line(lines[y], PLAYGROUND_SIZE, y + 1))
    mem_tiles: list[int] = []
    for y in range(MEMORY_SIZE):
        mem_tiles.extend(_decode_line(lines[PLAYGROUND_SIZE + y], MEMORY_SIZE, PLAYGROUND_SIZE + y + 1))
    return BoardState(
        Grid(PLAYGROUND_SIZE, PLAYGROUND_SIZE, play_tiles),
        Grid(MEMORY_SIZE, MEMORY_SIZE, mem_tiles),
    )
