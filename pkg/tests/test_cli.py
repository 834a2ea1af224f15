import json
from pathlib import Path

from qpc.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstruct:
    def test_hgp_toric(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "construct", "hgp",
            "--c1", FIXTURES / "rep3.pcm",
            "--c2", FIXTURES / "rep3.pcm",
            "--out-prefix", tmp_path / "toric",
        )
        assert code == 0
        assert "n: 18" in out
        assert "m_x: 9" in out and "m_z: 9" in out
        assert "commuting: True" in out
        for suffix in ("hx.pcm", "hx.alist", "hz.pcm", "hz.alist", "layout.json"):
            assert (tmp_path / f"toric.{suffix}").exists()

    def test_lp_z1_equals_hgp_bit_exact(self, tmp_path, capsys):
        code, _, _ = run(
            capsys,
            "construct", "lp",
            "--m1", FIXTURES / "rep3_z1.ring",
            "--m2", FIXTURES / "rep3_z1.ring",
            "--out-prefix", tmp_path / "lp1",
        )
        assert code == 0
        code, _, _ = run(
            capsys,
            "construct", "hgp",
            "--c1", FIXTURES / "rep3.pcm",
            "--c2", FIXTURES / "rep3.pcm",
            "--out-prefix", tmp_path / "hgp1",
        )
        assert code == 0
        assert (tmp_path / "lp1.hx.pcm").read_bytes() == (
            tmp_path / "hgp1.hx.pcm"
        ).read_bytes()
        assert (tmp_path / "lp1.hz.pcm").read_bytes() == (
            tmp_path / "hgp1.hz.pcm"
        ).read_bytes()

    def test_lp_z3(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "construct", "lp",
            "--m1", FIXTURES / "rep3_z3.ring",
            "--m2", FIXTURES / "rep3_z3.ring",
            "--out-prefix", tmp_path / "lp",
        )
        assert code == 0
        assert "n: 6" in out

    def test_bp_matches_lp(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "construct", "bp",
            "--graph-a", FIXTURES / "lift_1px_z3.graph",
            "--graph-b", FIXTURES / "lift_1px_z3.graph",
            "--action-a", FIXTURES / "bp_a_z3.action.json",
            "--action-b", FIXTURES / "bp_b_z3.action.json",
            "--out-prefix", tmp_path / "bp",
        )
        assert code == 0
        assert "n: 6" in out
        run(
            capsys,
            "construct", "lp",
            "--m1", FIXTURES / "rep3_z3.ring",
            "--m2", FIXTURES / "rep3_z3.ring",
            "--out-prefix", tmp_path / "lp",
        )
        assert (tmp_path / "bp.hx.pcm").read_bytes() == (
            tmp_path / "lp.hx.pcm"
        ).read_bytes()

    def test_bp_nonfree_action_exits_2(self, tmp_path, capsys):
        # the K4 rotation fixes vertex 3, but bp needs Tanner inputs;
        # build a Tanner action with a fixed check instead
        graph = "checks 2 bits 2\nc0 b0\nc0 b1\nc1 b0\nc1 b1\n"
        action = json.dumps(
            {"group": "Z2", "generators": [{"check_perm": [0, 1], "bit_perm": [1, 0]}]}
        )
        (tmp_path / "g.graph").write_text(graph)
        (tmp_path / "a.json").write_text(action)
        code, _, err = run(
            capsys,
            "construct", "bp",
            "--graph-a", tmp_path / "g.graph",
            "--graph-b", tmp_path / "g.graph",
            "--action-a", tmp_path / "a.json",
            "--action-b", tmp_path / "a.json",
            "--out-prefix", tmp_path / "bp",
        )
        assert code == 2
        assert "witness" in err

    def test_missing_option_is_parse_error(self, tmp_path, capsys):
        code, _, err = run(
            capsys,
            "construct", "hgp",
            "--c1", FIXTURES / "rep3.pcm",
            "--out-prefix", tmp_path / "x",
        )
        assert code == 1
        assert "--c2" in err

    def test_determinism(self, tmp_path, capsys):
        for prefix in ("one", "two"):
            run(
                capsys,
                "construct", "lp",
                "--m1", FIXTURES / "rep3_z3.ring",
                "--m2", FIXTURES / "rep3_z3.ring",
                "--out-prefix", tmp_path / prefix,
            )
        for suffix in ("hx.pcm", "hx.alist", "hz.pcm", "hz.alist", "layout.json"):
            assert (tmp_path / f"one.{suffix}").read_bytes() == (
                tmp_path / f"two.{suffix}"
            ).read_bytes()


class TestAnalyze:
    def build_toric(self, tmp_path, capsys):
        run(
            capsys,
            "construct", "hgp",
            "--c1", FIXTURES / "rep3.pcm",
            "--c2", FIXTURES / "rep3.pcm",
            "--out-prefix", tmp_path / "toric",
        )

    def test_toric_report(self, tmp_path, capsys):
        self.build_toric(tmp_path, capsys)
        code, out, _ = run(
            capsys,
            "--json-out", tmp_path / "report.json",
            "analyze",
            "--hx", tmp_path / "toric.hx.pcm",
            "--hz", tmp_path / "toric.hz.pcm",
            "--c1", FIXTURES / "rep3.pcm",
            "--c2", FIXTURES / "rep3.pcm",
        )
        assert code == 0
        assert "params: [[18,2,3]]" in out
        assert "hgp_k_matches: True" in out
        assert "seed: 0" in out
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["k"] == 2 and report["d"] == 3
        assert report["hgp_distance_bound"] == 3

    def test_budget_exit_code(self, tmp_path, capsys):
        self.build_toric(tmp_path, capsys)
        code, out, _ = run(
            capsys,
            "analyze",
            "--hx", tmp_path / "toric.hx.pcm",
            "--hz", tmp_path / "toric.hz.pcm",
            "--budget", "4",
        )
        assert code == 3
        assert "budget exceeded" in out

    def test_env_budget(self, tmp_path, capsys, monkeypatch):
        self.build_toric(tmp_path, capsys)
        monkeypatch.setenv("QPC_BUDGET", "4")
        code, _, _ = run(
            capsys,
            "analyze",
            "--hx", tmp_path / "toric.hx.pcm",
            "--hz", tmp_path / "toric.hz.pcm",
        )
        assert code == 3

    def test_alist_inputs(self, tmp_path, capsys):
        self.build_toric(tmp_path, capsys)
        code, out, _ = run(
            capsys,
            "analyze",
            "--hx", tmp_path / "toric.hx.alist",
            "--hz", tmp_path / "toric.hz.alist",
        )
        assert code == 0
        assert "params: [[18,2,3]]" in out

    def test_checkless_code(self, tmp_path, capsys):
        (tmp_path / "empty.pcm").write_text("0 3\n")
        code, out, _ = run(
            capsys,
            "analyze",
            "--hx", tmp_path / "empty.pcm",
            "--hz", tmp_path / "empty.pcm",
        )
        assert code == 0
        assert "k: 3" in out

    def test_noncommuting_refusal(self, tmp_path, capsys):
        (tmp_path / "hx.pcm").write_text("1 2\n1 1\n")
        (tmp_path / "hz.pcm").write_text("1 2\n1 0\n")
        code, out, _ = run(
            capsys,
            "analyze",
            "--hx", tmp_path / "hx.pcm",
            "--hz", tmp_path / "hz.pcm",
        )
        assert code == 0
        assert "commuting: False" in out
        assert "refused" in out


class TestLayout:
    def test_render_formats(self, tmp_path, capsys):
        run(
            capsys,
            "construct", "lp",
            "--m1", FIXTURES / "rep3_z3.ring",
            "--m2", FIXTURES / "rep3_z3.ring",
            "--out-prefix", tmp_path / "lp",
        )
        for fmt, marker in (
            ("svg", "<svg"),
            ("tikz", "tikzpicture"),
            ("dot", "graph layout"),
        ):
            code, _, _ = run(
                capsys,
                "layout",
                "--input", tmp_path / "lp.layout.json",
                "--format", fmt,
                "--out", tmp_path / f"fig.{fmt}",
            )
            assert code == 0
            assert marker in (tmp_path / f"fig.{fmt}").read_text()

    def test_json_roundtrip_via_cli(self, tmp_path, capsys):
        run(
            capsys,
            "construct", "hgp",
            "--c1", FIXTURES / "rep3.pcm",
            "--c2", FIXTURES / "rep3.pcm",
            "--out-prefix", tmp_path / "toric",
        )
        code, _, _ = run(
            capsys,
            "layout",
            "--input", tmp_path / "toric.layout.json",
            "--format", "json",
            "--out", tmp_path / "round.json",
        )
        assert code == 0
        assert (tmp_path / "round.json").read_bytes() == (
            tmp_path / "toric.layout.json"
        ).read_bytes()

    def test_graph_line_layout(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "layout",
            "--graph", FIXTURES / "lift_1px_z3.graph",
            "--format", "svg",
        )
        assert code == 0
        assert out.count("<circle") == 3  # three bits on the line
        assert out.count("<rect") == 3    # three checks

    def test_overlay(self, tmp_path, capsys):
        run(
            capsys,
            "construct", "hgp",
            "--c1", FIXTURES / "rep3.pcm",
            "--c2", FIXTURES / "rep3.pcm",
            "--out-prefix", tmp_path / "toric",
        )
        (tmp_path / "ov.json").write_text(
            json.dumps({"paulis": [[0, "Z"], [3, "Z"], [6, "Z"]]})
        )
        code, _, _ = run(
            capsys,
            "layout",
            "--input", tmp_path / "toric.layout.json",
            "--format", "svg",
            "--overlay", tmp_path / "ov.json",
            "--out", tmp_path / "fig.svg",
        )
        assert code == 0
        assert (tmp_path / "fig.svg").read_text().count('fill="red"') == 3


class TestVerify:
    def test_two_lift_passes(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "covering",
            "--cover", FIXTURES / "line3_2lift.graph",
            "--base", FIXTURES / "line3.graph",
            "--map", FIXTURES / "line3_2lift.map.json",
        )
        assert code == 0
        assert "valid: True" in out
        assert "lift_size: 2" in out

    def test_corrupted_map_fails_with_witness(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "covering",
            "--cover", FIXTURES / "line3_2lift.graph",
            "--base", FIXTURES / "line3.graph",
            "--map", FIXTURES / "line3_2lift_bad.map.json",
        )
        assert code == 2
        assert "valid: False" in out
        assert "vertex" in out

    def test_identity_covering(self, tmp_path, capsys):
        (tmp_path / "id.map.json").write_text(json.dumps({"vertex_map": [0, 1, 2]}))
        code, out, _ = run(
            capsys,
            "verify", "covering",
            "--cover", FIXTURES / "line3.graph",
            "--base", FIXTURES / "line3.graph",
            "--map", tmp_path / "id.map.json",
        )
        assert code == 0
        assert "lift_size: 1" in out

    def test_free_action_passes(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "action",
            "--graph", FIXTURES / "cycle6.graph",
            "--action", FIXTURES / "cycle6_z3.action.json",
        )
        assert code == 0
        assert "free: True" in out
        assert "vertex_classes: 2" in out

    def test_fixed_vertex_action_fails_with_witness(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "action",
            "--graph", FIXTURES / "b4.graph",
            "--action", FIXTURES / "b4_z3.action.json",
        )
        assert code == 2
        assert "free: False" in out
        assert "free_witness" in out and "3" in out
