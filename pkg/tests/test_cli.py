import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import FIXTURES
from geothick.cli import main
from geothick.constructions import two_ring_layout
from geothick.model import deserialize, serialize
from geothick.render import DEFAULT_PALETTE, RenderStyle, _fmt, render_svg
from geothick.verifier import verify


def run(*args, stdin=None):
    """Run the CLI in a subprocess so stdin/stdout behave like a shell pipe."""
    return subprocess.run([sys.executable, "-m", "geothick.cli", *args], input=stdin,
                          capture_output=True, text=True)


class TestConstructVerify:
    @pytest.mark.parametrize("graph", ["k4", "k7", "k12", "k6,8", "convex:7"])
    def test_pipe_law(self, graph):
        built = run("construct", "--graph", graph)
        assert built.returncode == 0, built.stderr
        checked = run("verify", "-", stdin=built.stdout)
        assert checked.returncode == 0
        assert json.loads(checked.stdout)["valid"] is True

    def test_k20_summary(self, tmp_path):
        out = tmp_path / "k20.json"
        assert main(["construct", "--graph", "k20", "--out", str(out)]) == 0
        d = deserialize(out.read_text())
        assert d.layer_count == 5 and len(d.edges) == 190

    def test_verify_failure_exit(self, tmp_path):
        d = two_ring_layout(8)
        bad = d.with_layers([0] * len(d.edges))
        path = tmp_path / "bad.json"
        path.write_text(serialize(bad))
        result = run("verify", str(path))
        assert result.returncode == 1
        assert json.loads(result.stdout)["violations"]

    def test_verify_parse_error(self):
        result = run("verify", "-", stdin="{not json")
        assert result.returncode == 1
        assert json.loads(result.stdout)["valid"] is False

    def test_usage_errors(self, capsys):
        assert main(["construct", "--graph", "petersen"]) == 2
        assert main(["construct", "--graph", "k6"]) == 0
        capsys.readouterr()
        assert main(["bounds"]) == 2
        assert main(["verify", "/nonexistent/drawing.json"]) == 2
        assert main(["search", "--graph", "convex:5", "--layers", "2"]) == 2

    def test_argparse_errors_exit_two(self):
        assert run("construct").returncode == 2
        assert run("frobnicate").returncode == 2


class TestBoundsAndTable:
    def test_bounds_n15(self, capsys):
        assert main(["bounds", "--n", "15"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["lower"] == 4 and doc["lower_source"] == "K15Theorem"
        assert doc["closed_form_lower"] == 3
        assert doc["upper"] == 4

    def test_bounds_bipartite(self, capsys):
        assert main(["bounds", "--bipartite", "6,8"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert (doc["lower"], doc["upper"]) == (3, 3)

    def test_table_text(self, capsys):
        assert main(["table", "--max", "100", "--format", "text"]) == 0
        assert capsys.readouterr().out == (FIXTURES / "table1.txt").read_text()

    def test_table_csv_and_plot(self, tmp_path, capsys):
        csv_path, png = tmp_path / "t.csv", tmp_path / "t.png"
        assert main(["table", "--max", "40", "--out", str(csv_path), "--plot", str(png)]) == 0
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "n,lower,upper,lower_source"
        assert lines[15] == "15,4,4,K15Theorem"
        assert len(lines) == 41
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


class TestAuditAndSearch:
    def test_audit(self, capsys):
        assert main(["audit-k15", "--trials", "13", "--seed", "1"]) == 0
        assert json.loads(capsys.readouterr().out)["all_ok"] is True

    def test_search_found(self, tmp_path):
        out = tmp_path / "k5.json"
        result = run("search", "--graph", "k5", "--layers", "2", "--budget", "20000",
                     "--steps-per-restart", "10000", "--out", str(out))
        assert result.returncode == 0
        stats = json.loads(result.stderr)
        assert stats["status"] == "Found"
        assert verify(deserialize(out.read_text())).valid

    def test_search_exhausted(self, tmp_path):
        result = run("search", "--graph", "k5", "--layers", "1", "--budget", "3000")
        assert result.returncode == 1
        assert json.loads(result.stderr)["status"] == "Exhausted"
        assert result.stdout == ""


class TestRender:
    @pytest.fixture
    def k8(self, tmp_path):
        path = tmp_path / "k8.json"
        path.write_text(serialize(two_ring_layout(8)))
        return path

    def test_two_colours_one_group_per_layer(self, k8, tmp_path):
        out = tmp_path / "k8.svg"
        assert main(["render", str(k8), "--out", str(out)]) == 0
        svg = out.read_text()
        groups = re.findall(r'<g id="layer-(\d+)" stroke="(#[0-9a-f]{6})"', svg)
        assert [g[0] for g in groups] == ["0", "1"]
        assert len({g[1] for g in groups}) == 2
        assert svg.count("<line ") == 28
        assert svg.count("<circle ") == 8

    def test_deterministic(self, k8, tmp_path):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        main(["render", str(k8), "--out", str(a)])
        main(["render", str(k8), "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_split_layers(self, k8, tmp_path):
        out = tmp_path / "k8.svg"
        assert main(["render", str(k8), "--out", str(out), "--split-layers"]) == 0
        files = sorted(p.name for p in tmp_path.glob("k8-layer*.svg"))
        assert files == ["k8-layer0.svg", "k8-layer1.svg"]
        assert (tmp_path / "k8-layer1.svg").read_text().count("<line ") == 14

    def test_palette_covers_table(self):
        assert len(set(DEFAULT_PALETTE)) >= 25

    def test_coordinates_inside_box(self):
        svg = render_svg(two_ring_layout(12), RenderStyle(width=300, height=200))
        xs = [float(v) for v in re.findall(r'cx="([-0-9.]+)"', svg)]
        ys = [float(v) for v in re.findall(r'cy="([-0-9.]+)"', svg)]
        assert all(0 <= x <= 300 for x in xs) and all(0 <= y <= 200 for y in ys)

    @pytest.mark.parametrize("value,text", [("1/3", "0.333"), ("-1/2", "-0.5"), ("2", "2"),
                                            ("-1/3000", "0"), ("2/3", "0.667")])
    def test_number_format(self, value, text):
        from fractions import Fraction
        assert _fmt(Fraction(value)) == text
