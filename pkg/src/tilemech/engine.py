"""Execution engine: per-click rule dispatch, fork semantics, deferred effects.

A click runs the mechanic's nine rules in order against a private copy of the
board, accumulating deferred actions which are flushed once at the end.
SHIFT and ROTATE commands fork: they consume the remaining command suffix of
their rule and replay it once per marked direction / rotation amount, saving
and restoring the focus around every branch. CHECK failures kill only the
innermost branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Sequence

from .model import (
    BoardState,
    Command,
    Focus,
    Kind,
    MARKER,
    Mechanic,
    NEUTRAL,
    OFF_BOARD,
    OFFSETS,
    PLAYGROUND_SIZE,
    RING,
    ring_distance_from_north,
    rotate_offset,
)

MAX_CALL_DEPTH = 16
MAX_STEPS = 100_000

# Deferred-action targets and effects.
PLAYGROUND = "PLAYGROUND"
MEMORY = "MEMORY"
SET = "SET"
CYCLE_BY = "CYCLE_BY"

# Trace outcomes.
APPLIED = "APPLIED"
SCHEDULED = "SCHEDULED"
TERMINATED_BRANCH = "TERMINATED_BRANCH"
SKIPPED = "SKIPPED"
CALLED = "CALLED"

# rotate_offset for every (rotation, positional index): _ROTATED[rot][i]
# is OFFSETS[i] rotated clockwise by rot steps.
_ROTATED = tuple(tuple(rotate_offset(off, rot) for off in OFFSETS) for rot in range(8))


class Mode(Enum):
    NORMAL = "NORMAL"
    BRUSH = "BRUSH"


class ExecError(Enum):
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"
    CALL_DEPTH_EXCEEDED = "CALL_DEPTH_EXCEEDED"


class EngineHalt(Exception):
    """Execution blew a resource budget; the caller must roll back."""

    def __init__(self, error: ExecError):
        super().__init__(error.value)
        self.error = error


@dataclass(frozen=True)
class DeferredAction:
    """A queued effect, applied at flush time in scheduling order.

    ``position`` is a playground coordinate (may be out of bounds, in which
    case the flush drops it) or an always-in-bounds memory coordinate.
    ``value`` is a color for SET and a step count for CYCLE_BY.
    """

    target: str
    position: tuple[int, int]
    effect: str
    value: int


@dataclass(frozen=True)
class TraceEvent:
    """One executed command, in execution order.

    ``path`` lists (command index, branch ordinal) pairs for every fork the
    event sits under; commands called into keep the caller's path. ``rule``
    and ``command`` are 1-based; brush strokes use rule 0.
    """

    rule: int
    command: int
    path: tuple[tuple[int, int], ...]
    kind: str
    outcome: str
    callee: int | None = None

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "command": self.command,
            "path": [list(pair) for pair in self.path],
            "kind": self.kind,
            "outcome": self.outcome,
            "callee": self.callee,
        }


@dataclass(frozen=True)
class ClickResult:
    board: BoardState
    trace: tuple[TraceEvent, ...]
    error: ExecError | None
    steps_used: int


@dataclass
class ExecutionContext:
    """Transient interpreter state for one click or sweep. Not shareable."""

    board: BoardState
    mechanic: Mechanic
    focus: Focus
    focus_stack: list[Focus] = field(default_factory=list)
    call_depth: int = 0
    steps_used: int = 0
    queue: list[DeferredAction] = field(default_factory=list)
    trace: list[TraceEvent] | None = field(default_factory=list)
    rule_index: int = 0
    command_index: int = 0
    path: tuple[tuple[int, int], ...] = ()


def resolve(focus: Focus, local: tuple[int, int]) -> tuple[int, int]:
    """Board coordinate a local offset addresses: rotate, then translate."""
    dx, dy = rotate_offset(local, focus.rotation)
    return (focus.x + dx, focus.y + dy)


def read_playground(board: BoardState, focus: Focus, local: tuple[int, int]) -> int:
    """Playground color at resolve(focus, local), or OFF_BOARD outside the grid."""
    x, y = resolve(focus, local)
    play = board.playground
    if 0 <= x < play.width and 0 <= y < play.height:
        return play.tiles[y * play.width + x]
    return OFF_BOARD


@lru_cache(maxsize=65536)
def _plan(command: Command):
    """Kind-specific digest of a command's non-neutral tiles."""
    kind = command.kind
    tiles = command.tiles
    if kind in (Kind.WRITE, Kind.WRITE_INSTANT, Kind.CHECK, Kind.CHECK_NOT):
        return tuple((i, c) for i, c in enumerate(tiles) if c != NEUTRAL)
    if kind in (Kind.WRITE_TO_MEMORY, Kind.WRITE_TO_MEMORY_INSTANT, Kind.CHECK_MEMORY, Kind.CHECK_MEMORY_NOT):
        return tuple((i % 3, i // 3, c) for i, c in enumerate(tiles) if c != NEUTRAL)
    if kind in (Kind.WRITE_FROM_MEMORY, Kind.CHECK_WITH_MEMORY, Kind.CHECK_WITH_MEMORY_NOT):
        # tile color k names memory tile k; i is the playground-side offset
        return tuple((i, (k - 1) % 3, (k - 1) // 3) for i, k in enumerate(tiles) if k != NEUTRAL)
    if kind is Kind.WRITE_FROM_PLAYGROUND:
        # tile color k names the playground tile at offset k (focus frame)
        return tuple((k - 1, i % 3, i // 3) for i, k in enumerate(tiles) if k != NEUTRAL)
    if kind in (Kind.CYCLE, Kind.CYCLE_INSTANT):
        return tuple((i, k) for i, k in enumerate(tiles) if k != NEUTRAL)
    if kind in (Kind.CYCLE_MEMORY, Kind.CYCLE_MEMORY_INSTANT):
        return tuple((i % 3, i // 3, k) for i, k in enumerate(tiles) if k != NEUTRAL)
    if kind is Kind.SHIFT:
        dirs = tuple(OFFSETS.index(off) for off in RING if tiles[OFFSETS.index(off)] == MARKER)
        return (dirs, tiles[4] == MARKER)
    if kind is Kind.ROTATE:
        amounts = tuple(
            sorted(ring_distance_from_north(off) for off in RING if tiles[OFFSETS.index(off)] == MARKER)
        )
        return (amounts, tiles[4] == MARKER)
    if kind is Kind.CALL:
        for i, c in enumerate(tiles):
            if c == MARKER:
                return i + 1
        return None
    return ()  # EMPTY


def _count_step(ctx: ExecutionContext) -> None:
    ctx.steps_used += 1
    if ctx.steps_used > MAX_STEPS:
        raise EngineHalt(ExecError.BUDGET_EXCEEDED)


def _emit(ctx: ExecutionContext, kind: Kind, outcome: str, callee: int | None = None) -> None:
    if ctx.trace is not None:
        ctx.trace.append(
            TraceEvent(ctx.rule_index, ctx.command_index, ctx.path, kind.name, outcome, callee)
        )


def exec_write(ctx: ExecutionContext, command: Command) -> None:
    """Overwrite target tiles with command colors; neutral tiles are ignored."""
    _count_step(ctx)
    kind = command.kind
    entries = _plan(command)
    board = ctx.board
    f = ctx.focus
    touched = 0
    if kind is Kind.WRITE or kind is Kind.WRITE_INSTANT:
        play = board.playground
        w, h = play.width, play.height
        rot = _ROTATED[f.rotation]
        instant = kind is Kind.WRITE_INSTANT
        for i, color in entries:
            dx, dy = rot[i]
            x, y = f.x + dx, f.y + dy
            if instant:
                if 0 <= x < w and 0 <= y < h:
                    play.tiles[y * w + x] = color
            else:
                ctx.queue.append(DeferredAction(PLAYGROUND, (x, y), SET, color))
            touched += 1
    elif kind is Kind.WRITE_TO_MEMORY or kind is Kind.WRITE_TO_MEMORY_INSTANT:
        mem = board.memory
        for mx, my, color in entries:
            if kind is Kind.WRITE_TO_MEMORY_INSTANT:
                mem.tiles[my * 3 + mx] = color
            else:
                ctx.queue.append(DeferredAction(MEMORY, (mx, my), SET, color))
            touched += 1
    elif kind is Kind.WRITE_FROM_MEMORY:
        mem = board.memory
        rot = _ROTATED[f.rotation]
        for i, sx, sy in entries:
            color = mem.tiles[sy * 3 + sx]
            dx, dy = rot[i]
            ctx.queue.append(DeferredAction(PLAYGROUND, (f.x + dx, f.y + dy), SET, color))
            touched += 1
    else:  # WRITE_FROM_PLAYGROUND
        play = board.playground
        w, h = play.width, play.height
        rot = _ROTATED[f.rotation]
        for si, mx, my in entries:
            dx, dy = rot[si]
            x, y = f.x + dx, f.y + dy
            if 0 <= x < w and 0 <= y < h:
                ctx.queue.append(DeferredAction(MEMORY, (mx, my), SET, play.tiles[y * w + x]))
                touched += 1
    if touched:
        instant = kind in (Kind.WRITE_INSTANT, Kind.WRITE_TO_MEMORY_INSTANT)
        _emit(ctx, kind, APPLIED if instant else SCHEDULED)
    else:
        _emit(ctx, kind, SKIPPED)


def exec_check(ctx: ExecutionContext, command: Command) -> bool:
    """Compare target tiles with source colors; False terminates the branch."""
    _count_step(ctx)
    kind = command.kind
    entries = _plan(command)
    f = ctx.focus
    board = ctx.board
    matched_all = True
    compared = False
    if kind is Kind.CHECK or kind is Kind.CHECK_NOT:
        play = board.playground
        w, h = play.width, play.height
        rot = _ROTATED[f.rotation]
        for i, c in entries:
            compared = True
            dx, dy = rot[i]
            x, y = f.x + dx, f.y + dy
            value = play.tiles[y * w + x] if 0 <= x < w and 0 <= y < h else OFF_BOARD
            if value != c:
                matched_all = False
                break
    elif kind is Kind.CHECK_MEMORY or kind is Kind.CHECK_MEMORY_NOT:
        mem = board.memory
        for mx, my, c in entries:
            compared = True
            if mem.tiles[my * 3 + mx] != c:
                matched_all = False
                break
    else:  # WITH_MEMORY variants
        play = board.playground
        mem = board.memory
        w, h = play.width, play.height
        rot = _ROTATED[f.rotation]
        for i, sx, sy in entries:
            compared = True
            dx, dy = rot[i]
            x, y = f.x + dx, f.y + dy
            value = play.tiles[y * w + x] if 0 <= x < w and 0 <= y < h else OFF_BOARD
            if value != mem.tiles[sy * 3 + sx]:
                matched_all = False
                break
    if kind in (Kind.CHECK_NOT, Kind.CHECK_MEMORY_NOT, Kind.CHECK_WITH_MEMORY_NOT):
        keep_going = not (matched_all and compared)
    else:
        keep_going = matched_all
    _emit(ctx, kind, APPLIED if keep_going else TERMINATED_BRANCH)
    return keep_going


def exec_cycle(ctx: ExecutionContext, command: Command) -> None:
    """Cycle target tiles forward through the full 9-color palette."""
    _count_step(ctx)
    kind = command.kind
    entries = _plan(command)
    if not entries:
        _emit(ctx, kind, SKIPPED)
        return
    board = ctx.board
    f = ctx.focus
    if kind is Kind.CYCLE or kind is Kind.CYCLE_INSTANT:
        play = board.playground
        w, h = play.width, play.height
        rot = _ROTATED[f.rotation]
        for i, k in entries:
            dx, dy = rot[i]
            x, y = f.x + dx, f.y + dy
            if kind is Kind.CYCLE_INSTANT:
                if 0 <= x < w and 0 <= y < h:
                    idx = y * w + x
                    play.tiles[idx] = (play.tiles[idx] - 1 + k) % 9 + 1
            else:
                ctx.queue.append(DeferredAction(PLAYGROUND, (x, y), CYCLE_BY, k))
    else:
        mem = board.memory
        for mx, my, k in entries:
            if kind is Kind.CYCLE_MEMORY_INSTANT:
                idx = my * 3 + mx
                mem.tiles[idx] = (mem.tiles[idx] - 1 + k) % 9 + 1
            else:
                ctx.queue.append(DeferredAction(MEMORY, (mx, my), CYCLE_BY, k))
    instant = kind in (Kind.CYCLE_INSTANT, Kind.CYCLE_MEMORY_INSTANT)
    _emit(ctx, kind, APPLIED if instant else SCHEDULED)


def exec_shift(ctx: ExecutionContext, command: Command, rest: Sequence[Command]) -> None:
    """Replay ``rest`` once per marked direction, focus translated each time."""
    _count_step(ctx)
    dirs, center_marked = _plan(command)
    own_index = ctx.command_index
    rest = tuple(rest)
    if center_marked or not dirs:
        _emit(ctx, command.kind, APPLIED)
        _run_seq(ctx, rest, own_index + 1)
        return
    origin = ctx.focus
    rot = _ROTATED[origin.rotation]
    for ordinal, i in enumerate(dirs, start=1):
        dx, dy = rot[i]
        ctx.focus_stack.append(origin)
        ctx.focus = Focus(origin.x + dx, origin.y + dy, origin.rotation)
        parent_path = ctx.path
        ctx.path = parent_path + ((own_index, ordinal),)
        ctx.command_index = own_index
        _emit(ctx, command.kind, APPLIED)
        _run_seq(ctx, rest, own_index + 1)
        ctx.path = parent_path
        ctx.focus = ctx.focus_stack.pop()


def exec_rotate(ctx: ExecutionContext, command: Command, rest: Sequence[Command]) -> None:
    """Replay ``rest`` once per marked rotation amount, ascending."""
    _count_step(ctx)
    amounts, center_marked = _plan(command)
    own_index = ctx.command_index
    rest = tuple(rest)
    if center_marked or not amounts:
        _emit(ctx, command.kind, APPLIED)
        _run_seq(ctx, rest, own_index + 1)
        return
    origin = ctx.focus
    for ordinal, k in enumerate(amounts, start=1):
        ctx.focus_stack.append(origin)
        ctx.focus = Focus(origin.x, origin.y, (origin.rotation + k) % 8)
        parent_path = ctx.path
        ctx.path = parent_path + ((own_index, ordinal),)
        ctx.command_index = own_index
        _emit(ctx, command.kind, APPLIED)
        _run_seq(ctx, rest, own_index + 1)
        ctx.path = parent_path
        ctx.focus = ctx.focus_stack.pop()


def exec_call(ctx: ExecutionContext, command: Command) -> None:
    """Run the rule named by the marker tile, then return to the caller."""
    _count_step(ctx)
    target = _plan(command)
    if target is None:
        _emit(ctx, command.kind, SKIPPED)
        return
    if ctx.call_depth + 1 > MAX_CALL_DEPTH:
        raise EngineHalt(ExecError.CALL_DEPTH_EXCEEDED)
    _emit(ctx, command.kind, CALLED, callee=target)
    ctx.call_depth += 1
    execute_rule(ctx, target)
    ctx.call_depth -= 1


def _run_seq(ctx: ExecutionContext, commands: tuple[Command, ...], base_index: int) -> bool:
    """Execute a command suffix; False when a CHECK terminated the branch.

    ``base_index`` is the 1-based slot of commands[0] for trace bookkeeping.
    SHIFT and ROTATE consume everything after them as their fork body, so the
    loop ends there.
    """
    for i, command in enumerate(commands):
        kind = command.kind
        if kind is Kind.EMPTY:
            continue
        ctx.command_index = base_index + i
        family = kind.family
        if family == "WRITE":
            exec_write(ctx, command)
        elif family == "CHECK":
            if not exec_check(ctx, command):
                return False
        elif family == "CYCLE":
            exec_cycle(ctx, command)
        elif family == "SHIFT":
            exec_shift(ctx, command, commands[i + 1 :])
            return True
        elif family == "ROTATE":
            exec_rotate(ctx, command, commands[i + 1 :])
            return True
        else:
            exec_call(ctx, command)
    return True


def execute_rule(ctx: ExecutionContext, rule_index: int) -> None:
    """Run one rule's commands in order. Branch termination stays inside."""
    if not 1 <= rule_index <= 9:
        raise ValueError(f"rule index out of range: {rule_index}")
    saved = ctx.rule_index
    ctx.rule_index = rule_index
    _run_seq(ctx, ctx.mechanic.rule(rule_index).commands, 1)
    ctx.rule_index = saved


def _flush(ctx: ExecutionContext) -> None:
    play = ctx.board.playground
    mem = ctx.board.memory
    w, h = play.width, play.height
    for action in ctx.queue:
        x, y = action.position
        if action.target == PLAYGROUND:
            if not (0 <= x < w and 0 <= y < h):
                continue
            idx = y * w + x
            tiles = play.tiles
        else:
            idx = y * 3 + x
            tiles = mem.tiles
        if action.effect == SET:
            tiles[idx] = action.value
        else:
            tiles[idx] = (tiles[idx] - 1 + action.value) % 9 + 1
    ctx.queue.clear()


def _apply_brush(ctx: ExecutionContext, brush: Command) -> None:
    # Brush strokes are instant writes at rotation 0; no rules run.
    _count_step(ctx)
    play = ctx.board.playground
    w, h = play.width, play.height
    touched = False
    for i, color in enumerate(brush.tiles):
        if color == NEUTRAL:
            continue
        dx, dy = OFFSETS[i]
        x, y = ctx.focus.x + dx, ctx.focus.y + dy
        if 0 <= x < w and 0 <= y < h:
            play.tiles[y * w + x] = color
            touched = True
    if ctx.trace is not None:
        ctx.trace.append(TraceEvent(0, 0, (), "BRUSH", APPLIED if touched else SKIPPED, None))


def execute_click(
    board: BoardState,
    mechanic: Mechanic,
    pos: tuple[int, int],
    mode: Mode = Mode.NORMAL,
) -> ClickResult:
    """Run one click. Pure: the input board is never mutated.

    NORMAL mode executes rules 1..9, each from a fresh focus at the clicked
    tile, then flushes the deferred queue in scheduling order. BRUSH mode
    paints the brush command instantly and runs no rules. Budget violations
    report an error and return the input board unchanged.
    """
    x, y = pos
    if not (0 <= x < PLAYGROUND_SIZE and 0 <= y < PLAYGROUND_SIZE):
        raise ValueError(f"click outside the playground: {pos}")
    working = board.copy()
    ctx = ExecutionContext(board=working, mechanic=mechanic, focus=Focus(x, y))
    try:
        if mode is Mode.BRUSH:
            _apply_brush(ctx, mechanic.brush)
        else:
            for r in range(1, 10):
                ctx.focus = Focus(x, y, 0)
                ctx.path = ()
                execute_rule(ctx, r)
            _flush(ctx)
    except EngineHalt as halt:
        return ClickResult(board.copy(), tuple(ctx.trace or ()), halt.error, ctx.steps_used)
    return ClickResult(working, tuple(ctx.trace or ()), None, ctx.steps_used)


def sweep(board: BoardState, mechanic: Mechanic) -> BoardState:
    """One whole-board pass: the rule phase for every tile, one final flush.

    Deferred actions accumulate globally, so non-INSTANT mechanics see the
    pre-sweep board everywhere — a synchronous update. INSTANT effects still
    apply immediately, and memory persists across the whole sweep. Raises
    EngineHalt on budget violations (the input board is never mutated).
    """
    working = board.copy()
    ctx = ExecutionContext(board=working, mechanic=mechanic, focus=Focus(0, 0))
    ctx.trace = None
    for ty in range(PLAYGROUND_SIZE):
        for tx in range(PLAYGROUND_SIZE):
            for r in range(1, 10):
                ctx.focus = Focus(tx, ty, 0)
                ctx.path = ()
                execute_rule(ctx, r)
    _flush(ctx)
    return working
