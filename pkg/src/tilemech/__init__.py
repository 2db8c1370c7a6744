"""Deterministic tile-grid game-mechanics prototyping engine."""

from .model import (
    BoardState,
    Command,
    CycleAction,
    Focus,
    Grid,
    Kind,
    Mechanic,
    Rule,
    Violation,
    allowed_colors,
    cycle_color,
    positional_index,
    offset_of_index,
    rotate_offset,
    validate_mechanic,
    NEUTRAL,
    MARKER,
    OFF_BOARD,
)
from .engine import (
    ClickResult,
    EngineHalt,
    ExecError,
    ExecutionContext,
    Mode,
    TraceEvent,
    execute_click,
    execute_rule,
    read_playground,
    resolve,
    sweep,
)
from .persistence import (
    DocumentError,
    InvalidMechanicError,
    MalformedError,
    UnknownVersionError,
    decode_board,
    decode_mechanic,
    encode_board,
    encode_mechanic,
)

__version__ = "0.1.0"

__all__ = [
    "BoardState",
    "ClickResult",
    "Command",
    "CycleAction",
    "DocumentError",
    "EngineHalt",
    "ExecError",
    "ExecutionContext",
    "Focus",
    "Grid",
    "InvalidMechanicError",
    "Kind",
    "MalformedError",
    "Mechanic",
    "Mode",
    "Rule",
    "TraceEvent",
    "UnknownVersionError",
    "Violation",
    "allowed_colors",
    "cycle_color",
    "decode_board",
    "decode_mechanic",
    "encode_board",
    "encode_mechanic",
    "execute_click",
    "execute_rule",
    "offset_of_index",
    "positional_index",
    "read_playground",
    "resolve",
    "rotate_offset",
    "sweep",
    "validate_mechanic",
    "NEUTRAL",
    "MARKER",
    "OFF_BOARD",
]
