import json

import pytest

from sostransfer.cli import run

SQUARE2 = '{"vertices":[[0,0],[2,0],[2,2],[0,2]]}'
SQUARE1 = '{"vertices":[[0,0],[1,0],[1,1],[0,1]]}'


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestToricCheck:
    def test_squares_json(self, capsys):
        code, out, _ = invoke(capsys, "toric-check", "--p", SQUARE2, "--q", SQUARE1, "--json")
        assert code == 0
        assert out.strip() == '{"count2q":9,"h":0,"interior":4,"holds":true,"margin":5}'

    def test_containment_exits_two(self, capsys):
        code, _, err = invoke(capsys, "toric-check", "--p", SQUARE1, "--q", SQUARE2)
        assert code == 2
        assert "translate containment" in err

    def test_non_integer_vertex(self, capsys):
        code, _, err = invoke(
            capsys, "toric-check", "--p", '{"vertices":[[0,0],[0.5,0]]}', "--q", SQUARE1
        )
        assert code == 1
        assert "vertices" in err

    def test_strict_rejects_unordered_extras(self, capsys):
        poly = '{"vertices":[[0,0],[2,0],[0,2],[1,1]]}'
        code, _, err = invoke(capsys, "toric-check", "--p", poly, "--q", SQUARE1, "--strict")
        assert code == 1
        assert "convex position" in err

    def test_unordered_accepted_without_strict(self, capsys):
        poly = '{"vertices":[[1,1],[0,0],[1,0],[0,1]]}'
        code, out, _ = invoke(capsys, "toric-check", "--p", SQUARE2, "--q", poly, "--json")
        assert code == 0 and json.loads(out)["holds"] is True

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(SQUARE2)
        code, out, _ = invoke(capsys, "toric-check", "--p", str(path), "--q", SQUARE1, "--json")
        assert code == 0 and json.loads(out)["margin"] == 5

    def test_determinism(self, capsys):
        one = invoke(capsys, "toric-check", "--p", SQUARE2, "--q", SQUARE1, "--json")
        two = invoke(capsys, "toric-check", "--p", SQUARE2, "--q", SQUARE1, "--json")
        assert one == two


class TestHilbert:
    def test_improved_degree_five(self, capsys):
        code, out, _ = invoke(capsys, "hilbert", "--d", "5", "--improved")
        assert code == 0
        assert "total multiplier degree: 6" in out
        assert "lawrence_prism" in out

    def test_improved_json(self, capsys):
        code, out, _ = invoke(capsys, "hilbert", "--d", "5", "--improved", "--json")
        payload = json.loads(out)
        assert payload["total_degree"] == 6
        assert payload["terminal_kind"] == "lawrence_prism"
        assert payload["budget_degree"] == 3
        assert payload["classic_bound"] == 8

    def test_classic(self, capsys):
        code, out, _ = invoke(capsys, "hilbert", "--d", "6", "--json")
        payload = json.loads(out)
        assert payload["total_degree"] == 12
        assert payload["terminal_kind"] == "2delta"


class TestDelPezzo:
    def test_catalog_rows(self, capsys):
        code, out, _ = invoke(capsys, "delpezzo-catalog", "--json")
        rows = json.loads(out)
        assert code == 0 and len(rows) == 24
        byname = {r["name"]: r for r in rows}
        assert byname["P2(6,0)"]["real_minus_one_curves"] == 27
        assert byname["D"]["real_minus_one_curves"] == 0
        assert byname["D(1,0)"]["real_minus_one_curves"] == 3

    def test_transfer_anticanonical(self, capsys):
        code, out, _ = invoke(
            capsys, "delpezzo-transfer", "--surface", "Q31(0,2)", "--divisor", "-K", "--json"
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["certificate_kind"] == "modified_1_interval"
        assert payload["terminal_kind"] == "zero"

    def test_unknown_surface(self, capsys):
        code, _, err = invoke(capsys, "delpezzo-transfer", "--surface", "P2(9,9)", "--divisor", "-K")
        assert code == 1
        assert "not catalogued" in err

    def test_bad_divisor_length(self, capsys):
        code, _, err = invoke(capsys, "delpezzo-transfer", "--surface", "Q22", "--divisor", "1,2,3")
        assert code == 1
        assert "divisor" in err

    def test_not_effective_exits_two(self, capsys):
        code, _, err = invoke(
            capsys, "delpezzo-transfer", "--surface", "P2(1,0)", "--divisor", "0,-1"
        )
        assert code == 2
        assert "not effective" in err


class TestRuled:
    def test_elliptic_schedule(self, capsys):
        code, out, _ = invoke(capsys, "ruled-schedule", "--elliptic", "--d", "7", "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["ladder"] == [[7, 0], [7, -2], [6, 0]]

    def test_inline_data(self, capsys):
        data = '{"minusK_dot_H":6,"H_dot_HplusK":0,"chiO":0,"ell":1}'
        code, out, _ = invoke(capsys, "ruled-schedule", "--data", data, "--d", "5", "--json")
        assert code == 0 and json.loads(out)["mode"] == "elliptic"

    def test_small_degree_exits_two(self, capsys):
        code, _, err = invoke(capsys, "ruled-schedule", "--elliptic", "--d", "3")
        assert code == 2

    def test_bound(self, capsys):
        code, out, _ = invoke(
            capsys, "ruled-bound", "--elliptic", "--d", "10", "--d0", "5", "--json"
        )
        payload = json.loads(out)
        assert payload["total_H_degree"] == 75
        assert payload["steps_counted"] == 10

    def test_missing_data(self, capsys):
        code, _, err = invoke(capsys, "ruled-schedule", "--d", "5")
        assert code == 1
        assert "data" in err


class TestLoggingEnv:
    def test_log_levels_accepted(self, capsys, monkeypatch):
        for level in ("off", "info", "debug"):
            monkeypatch.setenv("SOS_TRANSFER_LOG", level)
            code, out, _ = invoke(capsys, "delpezzo-catalog", "--json")
            assert code == 0 and len(json.loads(out)) == 24


class TestRoundTrip:
    def test_plan_json_reparses(self, capsys):
        from sostransfer.toric import plan_from_json_dict, improved_ternary_bound

        code, out, _ = invoke(capsys, "hilbert", "--d", "7", "--improved", "--json")
        payload = json.loads(out)
        payload.pop("budget_degree")
        payload.pop("classic_bound")
        plan = plan_from_json_dict(payload)
        assert plan == improved_ternary_bound(7)[0]
