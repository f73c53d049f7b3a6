import csv
import io
import json

import pytest

from cspath import generate_udg, load_udg, write_udg
from cspath.cli import main

COST_GR = "p sp 3 3\na 1 2 500\na 2 3 700\na 1 3 2000\n"
LENGTH_GR = "p sp 3 3\na 1 2 300\na 2 3 300\na 1 3 100\n"


@pytest.fixture
def udg_file(tmp_path):
    g = generate_udg(150, 0.25, seed=1)
    p = tmp_path / "g.udg"
    p.write_text(write_udg(g, 0.25, 1))
    return str(p)


class TestGenUdg:
    def test_writes_loadable_file(self, tmp_path, capsys):
        out = tmp_path / "x.udg"
        assert main(["gen-udg", "--n", "80", "--r", "0.2", "--seed", "3", "--out", str(out)]) == 0
        g, r, seed = load_udg(out)
        assert g.n == 80 and r == 0.2 and seed == 3
        assert "n=80" in capsys.readouterr().out


class TestLoadDimacs:
    def test_stats_and_normalized_output(self, tmp_path, capsys):
        c = tmp_path / "c.gr"
        l = tmp_path / "l.gr"
        c.write_text(COST_GR)
        l.write_text(LENGTH_GR)
        assert main(["load-dimacs", str(c), str(l), "--out", str(tmp_path / "ny")]) == 0
        out = capsys.readouterr().out
        assert "n=3 m=3" in out
        assert (tmp_path / "ny.cost.gr").exists()
        # normalized output reloads identically with divisor 1
        assert main(
            [
                "load-dimacs",
                str(tmp_path / "ny.cost.gr"),
                str(tmp_path / "ny.length.gr"),
                "--divisor",
                "1",
            ]
        ) == 0

    def test_parse_error_exit_code(self, tmp_path, capsys):
        c = tmp_path / "c.gr"
        c.write_text("p sp 1 1\na 1 1 oops\n")
        assert main(["load-dimacs", str(c), str(c)]) == 2
        assert "error" in capsys.readouterr().err


class TestBench:
    def test_bench_csp_writes_outputs(self, udg_file, tmp_path, capsys):
        prefix = str(tmp_path / "run")
        rc = main(
            [
                "bench-csp",
                "--udg",
                udg_file,
                "--classes",
                "25,50",
                "--trials",
                "2",
                "--k",
                "1",
                "--pmax",
                "1",
                "--seed",
                "0",
                "--out",
                prefix,
            ]
        )
        assert rc == 0
        rows = list(csv.DictReader(io.StringIO((tmp_path / "run.csv").read_text())))
        assert {r["algorithm"] for r in rows} == {"A_Dij", "A_1-HS1"}
        assert len(rows) == 2 * 2 * 2
        payload = json.loads((tmp_path / "run.json").read_text())
        assert payload["mode"] == "csp"
        out = capsys.readouterr().out
        assert "A_Dij" in out and "ratio" in out

    def test_bench_sp_runs(self, udg_file, capsys):
        rc = main(
            ["bench-sp", "--udg", udg_file, "--classes", "25", "--trials", "2", "--k", "2", "--pmax", "2"]
        )
        assert rc == 0
        assert "2-HS2" in capsys.readouterr().out

    def test_engine_filter_dij_only(self, udg_file, capsys):
        rc = main(
            ["bench-csp", "--udg", udg_file, "--engine", "dij", "--classes", "25", "--trials", "1"]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert "A_Dij" in out and "HS" not in out

    def test_pmax_without_coords_fails_cleanly(self, tmp_path, capsys):
        c = tmp_path / "c.gr"
        l = tmp_path / "l.gr"
        c.write_text(COST_GR)
        l.write_text(LENGTH_GR)
        rc = main(
            ["bench-csp", "--dimacs", str(c), str(l), "--pmax", "2", "--classes", "25", "--trials", "1"]
        )
        assert rc == 2
        assert "coordinates" in capsys.readouterr().err


class TestExactCli:
    def test_feasible(self, udg_file, capsys):
        g, _, _ = load_udg(udg_file)
        # pick a connected pair
        import oracles

        hops = oracles.hop_distances(g, 0)
        t = max(range(g.n), key=lambda v: hops[v])
        rc = main(
            [
                "exact",
                "--udg",
                udg_file,
                "--source",
                "0",
                "--target",
                str(t),
                "--beta",
                "10000000",
            ]
        )
        assert rc == 0
        assert "cost=" in capsys.readouterr().out

    def test_infeasible_exit_code(self, udg_file, capsys):
        rc = main(
            ["exact", "--udg", udg_file, "--source", "0", "--target", "1", "--beta", "1"]
        )
        assert rc == 1
