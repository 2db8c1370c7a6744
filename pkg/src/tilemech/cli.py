"""Command line driver: validate mechanics, run click scripts, benchmark,
render boards, export the reference corpus, serve the HTTP API.

``run`` exit codes: 0 all good, 1 decode/validation failure, 2 board
assertion failure, 3 engine budget error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from .corpus import REFERENCE_NAMES, load_reference, reference_document
from .engine import EngineHalt, Mode, execute_click, sweep
from .model import BoardState, Mechanic, PLAYGROUND_SIZE
from .persistence import (
    DocumentError,
    InvalidMechanicError,
    decode_board,
    decode_mechanic,
    encode_board,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ASSERTION = 2
EXIT_ENGINE = 3


class ScriptError(ValueError):
    def __init__(self, lineno: int, problem: str):
        super().__init__(f"script line {lineno}: {problem}")


def parse_script(text: str) -> list[tuple]:
    """One directive per line; '#' starts a comment.

    Directives: CLICK x y | MODE normal|brush | SWEEP n | ASSERT_BOARD path
    | DUMP path.
    """
    directives: list[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        op = parts[0].upper()
        rest = parts[1] if len(parts) > 1 else ""
        if op == "CLICK":
            fields = rest.split()
            try:
                x, y = (int(f) for f in fields)
            except ValueError:
                raise ScriptError(lineno, f"CLICK needs two integers, got {rest!r}")
            if not (0 <= x < PLAYGROUND_SIZE and 0 <= y < PLAYGROUND_SIZE):
                raise ScriptError(lineno, f"coordinates out of range: {x} {y}")
            directives.append(("CLICK", x, y))
        elif op == "MODE":
            name = rest.strip().upper()
            if name not in ("NORMAL", "BRUSH"):
                raise ScriptError(lineno, f"unknown mode: {rest!r}")
            directives.append(("MODE", Mode(name)))
        elif op == "SWEEP":
            try:
                n = int(rest.strip())
            except ValueError:
                raise ScriptError(lineno, f"SWEEP needs an integer, got {rest!r}")
            if n < 1:
                raise ScriptError(lineno, "SWEEP count must be >= 1")
            directives.append(("SWEEP", n))
        elif op in ("ASSERT_BOARD", "DUMP"):
            path = rest.strip()
            if not path:
                raise ScriptError(lineno, f"{op} needs a path")
            directives.append((op, path))
        else:
            raise ScriptError(lineno, f"unknown directive: {op}")
    return directives


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INVALID


def _load_mechanic(path: str) -> Mechanic:
    return decode_mechanic(Path(path).read_text(encoding="utf-8"))


def _load_board(path: str) -> BoardState:
    return decode_board(Path(path).read_text(encoding="utf-8"))


def _first_difference(actual: BoardState, expected: BoardState) -> str:
    for label, got, want in (
        ("playground", actual.playground, expected.playground),
        ("memory", actual.memory, expected.memory),
    ):
        for y in range(got.height):
            for x in range(got.width):
                if got.get(x, y) != want.get(x, y):
                    return f"{label} ({x}, {y}): expected {want.get(x, y)}, got {got.get(x, y)}"
    return "boards identical"


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        mechanic = _load_mechanic(args.mechanic)
    except OSError as err:
        return _fail(str(err))
    except InvalidMechanicError as err:
        for violation in err.violations:
            print(f"invalid: {violation}", file=sys.stderr)
        return EXIT_INVALID
    except DocumentError as err:
        return _fail(str(err))
    rules, commands = mechanic.counts()
    print(f"ok: {mechanic.name} ({rules} rules, {commands} commands)")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    try:
        mechanic = _load_mechanic(args.mechanic)
        board = _load_board(args.board)
        directives = parse_script(Path(args.script).read_text(encoding="utf-8"))
    except (OSError, DocumentError, ScriptError) as err:
        return _fail(str(err))

    mode = Mode.NORMAL
    trace_records: list[dict] = []
    run_log: list[dict] = []
    clicks = 0
    for step, directive in enumerate(directives, start=1):
        op = directive[0]
        error = None
        if op == "CLICK":
            _, x, y = directive
            clicks += 1
            result = execute_click(board, mechanic, (x, y), mode)
            if args.trace:
                for event in result.trace:
                    trace_records.append({"click": clicks, "x": x, "y": y, **event.to_dict()})
            if result.error is not None:
                print(f"engine error at step {step}: {result.error.value}", file=sys.stderr)
                return EXIT_ENGINE
            board = result.board
        elif op == "MODE":
            mode = directive[1]
        elif op == "SWEEP":
            try:
                for _ in range(directive[1]):
                    board = sweep(board, mechanic)
            except EngineHalt as halt:
                print(f"engine error at step {step}: {halt.error.value}", file=sys.stderr)
                return EXIT_ENGINE
        elif op == "ASSERT_BOARD":
            try:
                expected = _load_board(directive[1])
            except (OSError, DocumentError) as err:
                return _fail(str(err))
            if board != expected:
                print(f"assertion failed at step {step}: {_first_difference(board, expected)}")
                return EXIT_ASSERTION
        elif op == "DUMP":
            Path(directive[1]).write_text(encode_board(board), encoding="utf-8")
        run_log.append({"step": step, "directive": op, "error": error or ""})

    if args.out:
        Path(args.out).write_text(encode_board(board), encoding="utf-8")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for record in trace_records:
                fh.write(json.dumps(record) + "\n")
    if args.report:
        _write_run_report(Path(args.report), board, run_log)
    return EXIT_OK


def _write_run_report(directory: Path, board: BoardState, run_log: list[dict]) -> None:
    from .report import render_board

    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / "run.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=["step", "directive", "error"])
        writer.writeheader()
        writer.writerows(run_log)
    render_board(board, directory / "final_board.png", title="final board")


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        mechanic = _load_mechanic(args.mechanic)
        board = _load_board(args.board) if args.board else BoardState.neutral()
    except (OSError, DocumentError) as err:
        return _fail(str(err))

    total = args.clicks
    batches = max(1, min(args.batches, total))
    per_batch = total // batches
    positions = [(i % 10, (i // 10) % 10) for i in range(100)]
    errors = 0
    rows = []
    done = 0
    start = time.perf_counter()
    for b in range(batches):
        count = per_batch if b < batches - 1 else total - per_batch * (batches - 1)
        t0 = time.perf_counter()
        for i in range(count):
            pos = positions[(done + i) % 100]
            result = execute_click(board, mechanic, pos)
            if result.error is None:
                board = result.board
            else:
                errors += 1
        elapsed = time.perf_counter() - t0
        done += count
        rows.append(
            {
                "batch": b + 1,
                "clicks": count,
                "seconds": f"{elapsed:.6f}",
                "clicks_per_second": f"{count / elapsed:.1f}" if elapsed > 0 else "inf",
            }
        )
    total_elapsed = time.perf_counter() - start

    rate = total / total_elapsed if total_elapsed > 0 else float("inf")
    print(f"mechanic: {mechanic.name}")
    print(f"clicks: {total}")
    print(f"elapsed_s: {total_elapsed:.4f}")
    print(f"clicks_per_second: {rate:.1f}")
    print(f"errors: {errors}")
    if args.report:
        directory = Path(args.report)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "bench.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(
                fh, fieldnames=["batch", "clicks", "seconds", "clicks_per_second"]
            )
            writer.writeheader()
            writer.writerows(rows)
        from .report import render_bench

        render_bench(
            [float(r["clicks_per_second"]) for r in rows],
            directory / "bench.png",
            title=f"{mechanic.name}: clicks per second",
        )
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    try:
        board = _load_board(args.board)
    except (OSError, DocumentError) as err:
        return _fail(str(err))
    from .report import render_board

    render_board(board, args.out, title=args.title)
    print(args.out)
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    if args.corpus_command == "list":
        for name in REFERENCE_NAMES:
            ref = load_reference(name)
            print(f"{name}: {ref.rule_count} rules, {ref.command_count} commands")
        return EXIT_OK
    if args.name not in REFERENCE_NAMES:
        return _fail(f"unknown reference mechanic: {args.name!r}")
    text = reference_document(args.name)
    if args.corpus_command == "show":
        sys.stdout.write(text)
        return EXIT_OK
    out = args.out or f"{args.name}.mek"
    Path(out).write_text(text, encoding="utf-8")
    print(out)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tilemech", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a mechanic document")
    p_validate.add_argument("mechanic")
    p_validate.set_defaults(func=cmd_validate)

    p_run = sub.add_parser("run", help="run a click script against a board")
    p_run.add_argument("--mechanic", required=True)
    p_run.add_argument("--board", required=True)
    p_run.add_argument("--script", required=True)
    p_run.add_argument("--out", help="write the final board document here")
    p_run.add_argument("--trace", help="write trace events as JSON lines here")
    p_run.add_argument("--report", help="directory for run.csv and final_board.png")
    p_run.set_defaults(func=cmd_run)

    p_bench = sub.add_parser("bench", help="measure clicks per second")
    p_bench.add_argument("--mechanic", required=True)
    p_bench.add_argument("--board")
    p_bench.add_argument("--clicks", type=int, default=10000)
    p_bench.add_argument("--batches", type=int, default=10)
    p_bench.add_argument("--report", help="directory for bench.csv and bench.png")
    p_bench.set_defaults(func=cmd_bench)

    p_render = sub.add_parser("render", help="render a board document to an image")
    p_render.add_argument("--board", required=True)
    p_render.add_argument("--out", required=True)
    p_render.add_argument("--title")
    p_render.set_defaults(func=cmd_render)

    p_corpus = sub.add_parser("corpus", help="reference mechanics")
    corpus_sub = p_corpus.add_subparsers(dest="corpus_command", required=True)
    corpus_sub.add_parser("list")
    p_show = corpus_sub.add_parser("show")
    p_show.add_argument("name")
    p_export = corpus_sub.add_parser("export")
    p_export.add_argument("name")
    p_export.add_argument("--out")
    p_corpus.set_defaults(func=cmd_corpus)

    p_serve = sub.add_parser("serve", help="start the HTTP session service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--ui-dir", help="serve a built web UI from this directory")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
