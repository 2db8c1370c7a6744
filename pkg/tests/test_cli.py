import json
import subprocess
import sys

import pytest

from tilemech.cli import EXIT_ASSERTION, EXIT_ENGINE, EXIT_INVALID, EXIT_OK, ScriptError, main, parse_script
from tilemech.corpus import load_reference
from tilemech.engine import Mode, execute_click
from tilemech.model import BoardState, Command, Kind, MARKER, Mechanic, Rule
from tilemech.persistence import decode_board, encode_board, encode_mechanic

from helpers import board_with, sparse


@pytest.fixture
def toggle_path(tmp_path):
    path = tmp_path / "toggle.mek"
    path.write_text(encode_mechanic(load_reference("toggle").mechanic))
    return str(path)


@pytest.fixture
def board2_path(tmp_path):
    path = tmp_path / "board.mekboard"
    path.write_text(encode_board(board_with({(4, 4): 2})))
    return str(path)


def write_board(tmp_path, name, board):
    path = tmp_path / name
    path.write_text(encode_board(board))
    return str(path)


def write_script(tmp_path, text, name="script.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestParseScript:
    def test_directives_and_comments(self):
        script = "# setup\nCLICK 4 4\nMODE brush\nSWEEP 2\nDUMP out.mekboard\n\n"
        parsed = parse_script(script)
        assert parsed == [
            ("CLICK", 4, 4),
            ("MODE", Mode.BRUSH),
            ("SWEEP", 2),
            ("DUMP", "out.mekboard"),
        ]

    def test_bad_coordinates(self):
        with pytest.raises(ScriptError, match="line 1"):
            parse_script("CLICK 10 0")

    def test_unknown_directive(self):
        with pytest.raises(ScriptError):
            parse_script("JUMP 1 1")

    def test_sweep_count_positive(self):
        with pytest.raises(ScriptError):
            parse_script("SWEEP 0")


class TestValidate:
    def test_valid_file(self, toggle_path):
        assert main(["validate", toggle_path]) == EXIT_OK

    def test_invalid_mechanic_reports_position(self, tmp_path, capsys):
        bad = Mechanic.of("bad", Rule.of(Command.sparse(Kind.WRITE, {3: MARKER})))
        path = tmp_path / "bad.mek"
        path.write_text(encode_mechanic(bad))
        assert main(["validate", str(path)]) == EXIT_INVALID
        err = capsys.readouterr().err
        assert "rule 1" in err and "command 1" in err

    def test_truncated_file(self, tmp_path, toggle_path):
        path = tmp_path / "broken.mek"
        path.write_text(open(toggle_path).read()[:40])
        assert main(["validate", str(path)]) == EXIT_INVALID

    def test_missing_file(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.mek")]) == EXIT_INVALID


class TestRun:
    def test_toggle_click_assertion_passes(self, tmp_path, toggle_path, board2_path):
        expected = write_board(tmp_path, "expected.mekboard", board_with({(4, 4): 3}))
        script = write_script(tmp_path, f"CLICK 4 4\nASSERT_BOARD {expected}\n")
        assert main(["run", "--mechanic", toggle_path, "--board", board2_path, "--script", script]) == EXIT_OK

    def test_failed_assertion_prints_first_difference(self, tmp_path, toggle_path, board2_path, capsys):
        expected = write_board(tmp_path, "expected.mekboard", board_with({(4, 4): 9}))
        script = write_script(tmp_path, f"CLICK 4 4\nASSERT_BOARD {expected}\n")
        code = main(["run", "--mechanic", toggle_path, "--board", board2_path, "--script", script])
        assert code == EXIT_ASSERTION
        out = capsys.readouterr().out
        assert "playground (4, 4): expected 9, got 3" in out

    def test_budget_error_exits_three(self, tmp_path, board2_path):
        recursive = Mechanic.of("loop", Rule.of(sparse(Kind.CALL, {1: MARKER})))
        mech_path = tmp_path / "loop.mek"
        mech_path.write_text(encode_mechanic(recursive))
        script = write_script(tmp_path, "CLICK 0 0\n")
        code = main(["run", "--mechanic", str(mech_path), "--board", board2_path, "--script", script])
        assert code == EXIT_ENGINE

    def test_sweep_twice_restores_blinker(self, tmp_path):
        gol = load_reference("game-of-life")
        mech_path = tmp_path / "gol.mek"
        mech_path.write_text(encode_mechanic(gol.mechanic))
        blinker = board_with({(4, 3): 3, (4, 4): 3, (4, 5): 3})
        board_path = write_board(tmp_path, "blinker.mekboard", blinker)
        # memory ends up dirty after a sweep, so assert via DUMP + playground
        out_path = tmp_path / "out.mekboard"
        script = write_script(tmp_path, f"SWEEP 2\nDUMP {out_path}\n")
        assert main(["run", "--mechanic", str(mech_path), "--board", board_path, "--script", script]) == EXIT_OK
        assert decode_board(out_path.read_text()).playground == blinker.playground

    def test_mode_brush_paints(self, tmp_path, toggle_path):
        board_path = write_board(tmp_path, "b.mekboard", BoardState.neutral())
        out_path = tmp_path / "out.mekboard"
        script = write_script(tmp_path, "MODE brush\nCLICK 0 0\n")
        assert main([
            "run", "--mechanic", toggle_path, "--board", board_path,
            "--script", script, "--out", str(out_path),
        ]) == EXIT_OK
        final = decode_board(out_path.read_text())
        assert final.playground.get(0, 0) == 2  # default light blue brush

    def test_trace_and_report_outputs(self, tmp_path, toggle_path, board2_path):
        trace_path = tmp_path / "trace.jsonl"
        report_dir = tmp_path / "report"
        script = write_script(tmp_path, "CLICK 4 4\nCLICK 4 4\n")
        assert main([
            "run", "--mechanic", toggle_path, "--board", board2_path, "--script", script,
            "--trace", str(trace_path), "--report", str(report_dir),
        ]) == EXIT_OK
        records = [json.loads(line) for line in trace_path.read_text().splitlines()]
        assert {r["click"] for r in records} == {1, 2}
        assert all({"rule", "command", "kind", "outcome"} <= set(r) for r in records)
        assert (report_dir / "run.csv").exists()
        assert (report_dir / "final_board.png").stat().st_size > 0

    def test_bad_script_exits_one(self, tmp_path, toggle_path, board2_path):
        script = write_script(tmp_path, "FLY 1 1\n")
        assert main(["run", "--mechanic", toggle_path, "--board", board2_path, "--script", script]) == EXIT_INVALID

    def test_matches_direct_engine_calls(self, tmp_path, toggle_path, board2_path):
        out_path = tmp_path / "out.mekboard"
        script = write_script(tmp_path, "CLICK 4 4\nCLICK 3 3\nCLICK 4 4\n")
        assert main([
            "run", "--mechanic", toggle_path, "--board", board2_path,
            "--script", script, "--out", str(out_path),
        ]) == EXIT_OK
        board = board_with({(4, 4): 2})
        mechanic = load_reference("toggle").mechanic
        for pos in ((4, 4), (3, 3), (4, 4)):
            board = execute_click(board, mechanic, pos).board
        assert decode_board(out_path.read_text()) == board

    def test_replayable(self, tmp_path, toggle_path, board2_path):
        script = write_script(tmp_path, "CLICK 4 4\nCLICK 5 5\n")
        outs = []
        for name in ("a.mekboard", "b.mekboard"):
            out = tmp_path / name
            assert main([
                "run", "--mechanic", toggle_path, "--board", board2_path,
                "--script", script, "--out", str(out),
            ]) == EXIT_OK
            outs.append(out.read_text())
        assert outs[0] == outs[1]


class TestBench:
    def test_reports_rate(self, toggle_path, board2_path, capsys):
        assert main(["bench", "--mechanic", toggle_path, "--board", board2_path, "--clicks", "500"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "clicks_per_second:" in out
        assert "errors: 0" in out

    def test_empty_mechanic_at_least_as_fast(self, tmp_path, toggle_path, board2_path, capsys):
        empty_path = tmp_path / "empty.mek"
        empty_path.write_text(encode_mechanic(Mechanic(name="empty")))

        def rate(mech_path, board_arg):
            args = ["bench", "--mechanic", mech_path, "--clicks", "4000"]
            if board_arg:
                args += ["--board", board_arg]
            assert main(args) == EXIT_OK
            out = capsys.readouterr().out
            return float(next(l for l in out.splitlines() if l.startswith("clicks_per_second")).split(":")[1])

        toggle_rate = rate(toggle_path, board2_path)
        empty_rate = rate(str(empty_path), None)
        # strictly less work per click; 0.95 factor absorbs timer noise
        assert empty_rate >= toggle_rate * 0.95

    def test_report_files(self, tmp_path, toggle_path, board2_path):
        report_dir = tmp_path / "bench-report"
        assert main([
            "bench", "--mechanic", toggle_path, "--board", board2_path,
            "--clicks", "300", "--batches", "3", "--report", str(report_dir),
        ]) == EXIT_OK
        csv_text = (report_dir / "bench.csv").read_text()
        assert csv_text.count("\n") == 4  # header + 3 batches
        assert (report_dir / "bench.png").stat().st_size > 0


class TestRenderAndCorpus:
    def test_render_board(self, tmp_path, board2_path):
        out = tmp_path / "board.png"
        assert main(["render", "--board", board2_path, "--out", str(out)]) == EXIT_OK
        assert out.stat().st_size > 0

    def test_corpus_list_and_show(self, capsys):
        assert main(["corpus", "list"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "toggle: 2 rules, 4 commands" in out
        assert main(["corpus", "show", "toggle"]) == EXIT_OK
        shown = capsys.readouterr().out
        assert '"format_version": 1' in shown

    def test_corpus_export(self, tmp_path):
        out = tmp_path / "exported.mek"
        assert main(["corpus", "export", "sliding-move", "--out", str(out)]) == EXIT_OK
        assert main(["validate", str(out)]) == EXIT_OK

    def test_corpus_unknown_name(self):
        assert main(["corpus", "export", "chess"]) == EXIT_INVALID


class TestEntryPoint:
    def test_module_invocation(self, toggle_path):
        proc = subprocess.run(
            [sys.executable, "-m", "tilemech.cli", "validate", toggle_path],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "ok: toggle" in proc.stdout
