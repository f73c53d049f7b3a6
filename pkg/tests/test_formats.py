import numpy as np
import pytest

from cspath import FormatError, Graph, load_coords, load_dimacs, load_udg, write_dimacs, write_udg
from cspath.generate import generate_udg

COST_GR = """c hand-written golden instance
p sp 5 6
a 1 2 730
a 2 3 120
a 1 3 99
a 3 4 250
a 4 5 1000
a 5 1 305
"""

LENGTH_GR = """c travel times for the same arcs
p sp 5 6
a 1 2 200
a 2 3 415
a 1 3 380
a 3 4 100
a 4 5 517
a 5 1 99
"""


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestLoadDimacs:
    def test_golden_pair(self, tmp_path):
        g = load_dimacs(
            _write(tmp_path, "c.gr", COST_GR), _write(tmp_path, "l.gr", LENGTH_GR)
        )
        assert g.n == 5 and g.m == 6
        arcs = {
            (int(t), int(h)): (int(a), int(b))
            for t, h, a, b in zip(g.arc_tail, g.arc_head, g.cost, g.length)
        }
        # floor(w / 100) integerization; ids remapped to 0-based
        assert arcs == {
            (0, 1): (7, 2),
            (1, 2): (1, 4),
            (0, 2): (0, 3),
            (2, 3): (2, 1),
            (3, 4): (10, 5),
            (4, 0): (3, 0),
        }

    def test_header_contract(self, tmp_path):
        text = "p sp 4 5\n" + "".join(f"a 1 {i} 100\n" for i in (2, 3, 4, 2, 3))
        g = load_dimacs(_write(tmp_path, "a.gr", text), _write(tmp_path, "b.gr", text))
        assert g.n == 4 and g.m == 5

    def test_malformed_line_reports_lineno(self, tmp_path):
        bad = "p sp 2 1\na 1 x 5\n"
        with pytest.raises(FormatError, match="line 2"):
            load_dimacs(_write(tmp_path, "a.gr", bad), _write(tmp_path, "b.gr", bad))

    def test_arc_count_mismatch(self, tmp_path):
        a = "p sp 2 2\na 1 2 5\na 2 1 5\n"
        with pytest.raises(FormatError, match="promises"):
            load_dimacs(
                _write(tmp_path, "a.gr", "p sp 2 2\na 1 2 5\n"),
                _write(tmp_path, "b.gr", a),
            )

    def test_arc_set_mismatch_between_files(self, tmp_path):
        a = "p sp 3 2\na 1 2 5\na 2 3 5\n"
        b = "p sp 3 2\na 1 2 5\na 3 2 5\n"
        with pytest.raises(FormatError, match="differs"):
            load_dimacs(_write(tmp_path, "a.gr", a), _write(tmp_path, "b.gr", b))

    def test_self_loops_dropped_duplicates_kept(self, tmp_path):
        text = "p sp 2 4\na 1 2 100\na 1 2 300\na 1 1 500\na 2 1 100\n"
        g = load_dimacs(_write(tmp_path, "a.gr", text), _write(tmp_path, "b.gr", text))
        assert g.m == 3  # self-loop gone, parallel (0, 1) arcs kept
        assert sorted(int(c) for c in g.cost) == [1, 1, 3]

    def test_vertex_id_out_of_range(self, tmp_path):
        bad = "p sp 2 1\na 1 7 5\n"
        with pytest.raises(FormatError, match="out of range"):
            load_dimacs(_write(tmp_path, "a.gr", bad), _write(tmp_path, "b.gr", bad))

    def test_swap_exchanges_weights(self, tmp_path):
        g = load_dimacs(
            _write(tmp_path, "c.gr", COST_GR),
            _write(tmp_path, "l.gr", LENGTH_GR),
            swap=True,
        )
        assert int(g.cost[0]) == 2 and int(g.length[0]) == 7


class TestDimacsRoundTrip:
    def test_write_reload_bit_identical(self, tmp_path):
        g = load_dimacs(
            _write(tmp_path, "c.gr", COST_GR), _write(tmp_path, "l.gr", LENGTH_GR)
        )
        cost_text, length_text = write_dimacs(g)
        g2 = load_dimacs(
            _write(tmp_path, "c2.gr", cost_text),
            _write(tmp_path, "l2.gr", length_text),
            divisor=1,
        )
        assert g2.equals(g)
        assert write_dimacs(g2) == (cost_text, length_text)


class TestUdgFormat:
    def test_round_trip(self, tmp_path):
        g = generate_udg(50, 0.3, seed=7)
        text = write_udg(g, 0.3, 7)
        p = tmp_path / "g.udg"
        p.write_text(text)
        g2, r, seed = load_udg(p)
        assert r == 0.3 and seed == 7
        assert g2.equals(g)
        assert write_udg(g2, r, seed) == text

    def test_requires_coords(self):
        g = Graph.from_arcs(2, [0], [1], [1], [1])
        with pytest.raises(FormatError):
            write_udg(g, 0.1, 0)

    def test_header_errors(self, tmp_path):
        p = tmp_path / "bad.udg"
        p.write_text("nope 1 2 3\n")
        with pytest.raises(FormatError, match="header"):
            load_udg(p)


class TestCoords:
    def test_load_coords(self, tmp_path):
        p = tmp_path / "g.co"
        p.write_text("c comment\np aux sp co 3\nv 1 10 20\nv 2 -5 7\nv 3 0 0\n")
        coords = load_coords(p, 3)
        assert coords.tolist() == [[10.0, 20.0], [-5.0, 7.0], [0.0, 0.0]]

    def test_missing_vertex_errors(self, tmp_path):
        p = tmp_path / "g.co"
        p.write_text("v 1 0 0\n")
        with pytest.raises(FormatError, match="missing"):
            load_coords(p, 2)
