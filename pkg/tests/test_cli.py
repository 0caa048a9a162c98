"""Command-line interface: subcommands, formats, exit codes, determinism."""

import json
import math

import pytest

from qudisc import cli
from qudisc.discrimination import minerror_probability, total_failure
from qudisc.spectrum import ProblemConfig


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpectrum:
    def test_text_table(self, capsys):
        code, out, _ = run(["spectrum", "-n", "2", "--na", "1", "--nb", "1", "--nc", "1"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "k overlap multiplicity"
        assert lines[1] == "0 1 4"
        assert lines[2] == "1 0.5 2"
        assert "d2 - d1 = 0" in lines
        assert "swapped = false" in lines

    def test_dim_three(self, capsys):
        code, out, _ = run(["spectrum", "-n", "3", "--na", "1", "--nb", "1", "--nc", "1"], capsys)
        assert code == 0
        assert "0 1 10" in out and "1 0.5 8" in out

    def test_gap_and_swap_reporting(self, capsys):
        code, out, _ = run(
            ["spectrum", "-n", "2", "--na", "1", "--nb", "1", "--nc", "2", "--json"], capsys
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["swapped"] is True
        assert payload["d2"] - payload["d1"] == payload["gap"] == 1

    def test_bad_dimension_exits_2(self, capsys):
        code, _, err = run(["spectrum", "-n", "1", "--na", "1", "--nb", "1", "--nc", "1"], capsys)
        assert code == 2
        assert "error" in err


class TestUnambiguous:
    def test_json_round_trip(self, capsys):
        argv = ["unambiguous", "-n", "3", "--na", "2", "--nb", "1", "--nc", "2",
                "--eta1", "0.3", "--json"]
        code, out, _ = run(argv, capsys)
        assert code == 0
        payload = json.loads(out)
        cfg = ProblemConfig(**payload["config"])
        result = total_failure(cfg)
        assert payload["total"] == pytest.approx(result.q_total, abs=1e-15)
        assert [b["q1"] for b in payload["blocks"]] == [
            pytest.approx(b.q1, abs=1e-15) for b in result.blocks
        ]

    def test_text_total_line(self, capsys):
        code, out, _ = run(
            ["unambiguous", "-n", "2", "--na", "1", "--nb", "1", "--nc", "1"], capsys
        )
        assert code == 0
        assert f"Q_opt = {5 / 6:.12g}" in out


class TestMinError:
    def test_json_round_trip(self, capsys):
        argv = ["minerror", "-n", "2", "--na", "2", "--nb", "1", "--nc", "1", "--json"]
        code, out, _ = run(argv, capsys)
        assert code == 0
        payload = json.loads(out)
        result = minerror_probability(ProblemConfig(**payload["config"]))
        assert payload["total"] == pytest.approx(result.p_me, abs=1e-15)
        assert payload["residual_multiplicity"] == 1

    def test_text_output(self, capsys):
        code, out, _ = run(["minerror", "-n", "2", "--na", "1", "--nb", "1", "--nc", "1"], capsys)
        assert code == 0
        assert f"P_ME = {0.5 - math.sqrt(3) / 12:.12g}" in out


class TestBounds:
    def test_equal_programs(self, capsys):
        code, out, _ = run(["bounds", "--na", "1", "--nb", "1", "--nc", "1"], capsys)
        assert code == 0
        assert f"Q0 = {2 / 3:.12g}" in out

    def test_unequal_programs_reports_p0_and_exits_3(self, capsys):
        code, out, err = run(["bounds", "--na", "2", "--nb", "1", "--nc", "1"], capsys)
        assert code == 3
        assert "P0 = " in out
        assert "Q0 undefined" in out
        assert "requires n_a = n_c" in err

    def test_json_null_q0(self, capsys):
        code, out, _ = run(["bounds", "--na", "2", "--nb", "1", "--nc", "1", "--json"], capsys)
        assert code == 3
        assert json.loads(out)["q0"] is None


class TestVerify:
    ARGS = ["verify", "--max-total-dim", "64", "--samples", "4000"]

    def test_small_grid_passes(self, capsys):
        code, out, _ = run(self.ARGS, capsys)
        assert code == 0
        assert "all checks passed" in out
        assert out.count("PASS") == 7

    def test_negative_control_fails(self, capsys):
        code, out, _ = run(self.ARGS + ["--inject-q-fault"], capsys)
        assert code == 1
        assert "FAIL POVM certification" in out


class TestSweep:
    def test_csv_shape_and_values(self, capsys):
        code, out, _ = run(
            ["sweep", "--dim-max", "6", "--na", "1", "--nb", "1", "--nc", "1"], capsys
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,n_A,n_B,n_C,eta1,Q_opt,P_ME,Q0,P0"
        assert len(lines) == 6
        for row in lines[1:]:
            n, *_, q_opt, _, q0, _ = row.split(",")
            assert float(q_opt) == pytest.approx((2 * int(n) + 1) / (3 * int(n)), abs=1e-9)
            assert float(q0) == pytest.approx(2 / 3, abs=1e-9)

    def test_unequal_programs_leave_q0_empty(self, capsys):
        code, out, _ = run(
            ["sweep", "--dim-max", "3", "--na", "2", "--nb", "1", "--nc", "1"], capsys
        )
        assert code == 0
        for row in out.splitlines()[1:]:
            assert row.split(",")[7] == ""

    def test_byte_identical_reruns(self, capsys):
        argv = ["sweep", "--dim-max", "40", "--na", "2", "--nb", "3", "--nc", "1",
                "--eta1", "0.35"]
        first = run(argv, capsys)
        second = run(argv, capsys)
        assert first == second

    def test_out_flag_writes_file(self, tmp_path, capsys):
        target = tmp_path / "rows.csv"
        argv = ["sweep", "--dim-max", "4", "--na", "1", "--nb", "1", "--nc", "1",
                "--out", str(target)]
        code, out, _ = run(argv, capsys)
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("n,n_A,n_B,n_C,eta1,")

    def test_unwritable_out_exits_4(self, tmp_path, capsys):
        code, _, err = run(
            ["sweep", "--dim-max", "4", "--na", "1", "--nb", "1", "--nc", "1",
             "--out", str(tmp_path / "missing" / "rows.csv")],
            capsys,
        )
        assert code == 4
        assert "cannot open output file" in err

    def test_bad_range_exits_2(self, capsys):
        code, _, err = run(
            ["sweep", "--dim-max", "1", "--na", "1", "--nb", "1", "--nc", "1"], capsys
        )
        assert code == 2
        assert "dim-min" in err


def test_unknown_flag_raises_system_exit():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["spectrum", "--bogus"])
    assert excinfo.value.code == 2


def test_missing_subcommand_raises_system_exit():
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == 2
