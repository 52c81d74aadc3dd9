import json
import subprocess
import sys

import pytest

from gridroute import Grid, InvalidPermutation, Permutation, SwapSchedule
from gridroute.cli import main
from gridroute.io import (
    FormatError,
    read_permutation,
    read_schedule,
    schedule_to_dict,
    write_permutation,
    write_schedule,
)


@pytest.fixture
def perm_file(tmp_path):
    path = tmp_path / "p.json"
    assert main(["perm", "--grid", "4x4", "--seed", "3", "--out", str(path)]) == 0
    return path


class TestFormats:
    def test_permutation_roundtrip(self, tmp_path):
        g = Grid(2, 3)
        pi = Permutation.from_indices(g, [5, 4, 3, 2, 1, 0])
        write_permutation(tmp_path / "p.json", pi)
        assert json.loads((tmp_path / "p.json").read_text()) == {"rows": 2, "cols": 3, "perm": [5, 4, 3, 2, 1, 0]}
        assert read_permutation(tmp_path / "p.json") == pi

    def test_schedule_zero_based(self):
        s = SwapSchedule(((((1, 1), (1, 2)),),))
        d = schedule_to_dict(Grid(2, 2), s, "local")
        assert d == {"rows": 2, "cols": 2, "algorithm": "local", "layers": [[[[0, 0], [0, 1]]]], "depth": 1, "swaps": 1}

    def test_schedule_roundtrip(self, tmp_path):
        g = Grid(3, 3)
        s = SwapSchedule(((((1, 1), (1, 2)), ((2, 2), (3, 2))), (((1, 2), (1, 3)),)))
        write_schedule(tmp_path / "s.json", g, s)
        assert read_schedule(tmp_path / "s.json") == (g, s)

    @pytest.mark.parametrize(
        "content",
        ["not json", "[1, 2]", '{"rows": 2, "cols": 2}', '{"rows": 0, "cols": 2, "perm": []}', '{"rows": 1, "cols": 2, "perm": [0, "1"]}'],
    )
    def test_malformed_permutation(self, tmp_path, content):
        (tmp_path / "p.json").write_text(content)
        with pytest.raises(FormatError):
            read_permutation(tmp_path / "p.json")

    def test_non_bijection(self, tmp_path):
        (tmp_path / "p.json").write_text('{"rows": 1, "cols": 2, "perm": [0, 0]}')
        with pytest.raises(InvalidPermutation):
            read_permutation(tmp_path / "p.json")

    def test_missing_file(self, tmp_path):
        with pytest.raises(FormatError):
            read_permutation(tmp_path / "nope.json")

    def test_malformed_schedule(self, tmp_path):
        (tmp_path / "s.json").write_text('{"rows": 2, "cols": 2, "layers": [[[0, 1]]]}')
        with pytest.raises(FormatError):
            read_schedule(tmp_path / "s.json")


class TestCli:
    @pytest.mark.parametrize("algo", ["local", "naive", "ats"])
    def test_route_then_verify(self, tmp_path, perm_file, algo, capsys):
        out = tmp_path / f"{algo}.json"
        assert main(["route", "--grid", "4x4", "--perm", str(perm_file), "--algo", algo, "--out", str(out)]) == 0
        summary = capsys.readouterr().out
        assert "depth=" in summary and "swaps=" in summary and "time_us=" in summary
        assert json.loads(out.read_text())["rows"] == 4
        assert main(["verify", "--grid", "4x4", "--perm", str(perm_file), "--schedule", str(out)]) == 0

    def test_route_flags(self, tmp_path, perm_file):
        out = tmp_path / "s.json"
        args = ["route", "--grid", "4x4", "--perm", str(perm_file), "--no-transpose", "--no-fallback", "--compact"]
        assert main(args + ["--out", str(out)]) == 0
        assert json.loads(out.read_text())["algorithm"] == "local"

    def test_verify_failure_reports_zero_based_vertex(self, tmp_path, capsys):
        g = Grid(2, 2)
        write_permutation(tmp_path / "p.json", Permutation.from_indices(g, [1, 0, 2, 3]))
        write_schedule(tmp_path / "s.json", g, SwapSchedule(()))
        code = main(["verify", "--grid", "2x2", "--perm", str(tmp_path / "p.json"), "--schedule", str(tmp_path / "s.json")])
        assert code == 1
        assert "(0, 0)" in capsys.readouterr().out

    def test_verify_illegal_layer(self, tmp_path):
        g = Grid(2, 2)
        write_permutation(tmp_path / "p.json", Permutation.identity(g))
        (tmp_path / "s.json").write_text('{"rows": 2, "cols": 2, "layers": [[[[0, 0], [1, 1]]]]}')
        assert main(["verify", "--grid", "2x2", "--perm", str(tmp_path / "p.json"), "--schedule", str(tmp_path / "s.json")]) == 1

    def test_exit_codes(self, tmp_path, perm_file):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert main(["route", "--grid", "4x4", "--perm", str(bad)]) == 2
        assert main(["route", "--grid", "3x3", "--perm", str(perm_file)]) == 2
        nb = tmp_path / "nb.json"
        nb.write_text('{"rows": 1, "cols": 2, "perm": [1, 1]}')
        assert main(["route", "--grid", "1x2", "--perm", str(nb)]) == 3
        assert main(["verify", "--grid", "1x2", "--perm", str(nb), "--schedule", str(bad)]) == 3
        assert main(["verify", "--grid", "4x4", "--perm", str(perm_file), "--schedule", str(bad)]) == 2

    def test_bad_grid_argument(self):
        with pytest.raises(SystemExit) as exc:
            main(["route", "--grid", "four", "--perm", "x"])
        assert exc.value.code == 2

    def test_module_entry_point(self, perm_file):
        proc = subprocess.run(
            [sys.executable, "-m", "gridroute", "route", "--grid", "4x4", "--perm", str(perm_file)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0 and proc.stdout.startswith("algorithm=")
