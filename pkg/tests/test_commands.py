import json

import pytest
from typer.testing import CliRunner

from app.main import app
from app.services.leafrank_service import leafrank_service

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, list(args))


class TestBracket:
    @pytest.mark.parametrize(
        "structure, expected",
        [("semiclassical", "2*x[1,2]*x[2,1]"), ("kks", "0"), ("gr", "0")],
    )
    def test_generators(self, structure, expected):
        result = invoke("bracket", "--structure", structure, "--n", "2", "x[1,1]", "x[2,2]")
        assert result.exit_code == 0
        assert result.output.strip() == expected

    def test_parse_error_exits_2(self):
        result = invoke("bracket", "--n", "2", "x[1,1] +", "x[2,2]")
        assert result.exit_code == 2

    def test_unknown_variable_exits_2(self):
        result = invoke("bracket", "--n", "2", "x[3,3]", "x[2,2]")
        assert result.exit_code == 2

    def test_unknown_structure_exits_2(self):
        result = invoke("bracket", "--structure", "lie", "x[1,1]", "x[2,2]")
        assert result.exit_code == 2


class TestCharcoeff:
    def test_single(self):
        result = invoke("charcoeff", "--n", "2", "--i", "2")
        assert result.exit_code == 0
        assert result.output.strip() == "x[1,1]*x[2,2] - x[1,2]*x[2,1]"

    def test_all_via_charpoly(self):
        result = invoke("charcoeff", "--n", "2", "--via-charpoly")
        assert result.exit_code == 0
        assert "c1 = x[1,1] + x[2,2]" in result.output

    def test_bad_index(self):
        assert invoke("charcoeff", "--n", "2", "--i", "3").exit_code == 2


class TestVerify:
    def test_involutive(self, tmp_path):
        out = tmp_path / "report.json"
        result = invoke("verify", "involutive", "--n", "3", "--json", str(out))
        assert result.exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["pass"] is True
        assert payload["command"] == "verify involutive"
        assert len(payload["checks"]) == 3
        assert payload["schema_version"] == "1"

    def test_jacobi(self):
        assert invoke("verify", "jacobi", "--structure", "semiclassical", "--n", "2").exit_code == 0

    @pytest.mark.parametrize("suite", ["delta-phi", "charpoly", "gr-weight"])
    def test_other_suites(self, suite):
        assert invoke("verify", suite, "--n", "2").exit_code == 0

    @pytest.mark.parametrize("n", ["1", "3"])
    def test_charpoly_odd_sizes(self, n):
        assert invoke("verify", "charpoly", "--n", n).exit_code == 0

    def test_sl2(self):
        assert invoke("verify", "sl2", "--max-degree", "3", "--bound", "2").exit_code == 0

    def test_limit_records_seed(self, tmp_path):
        out = tmp_path / "limit.json"
        assert invoke("verify", "limit", "--n", "2", "--seed", "4", "--json", str(out)).exit_code == 0
        assert json.loads(out.read_text())["seed"] == 4

    def test_gr_weight_bad_n(self):
        assert invoke("verify", "gr-weight", "--n", "1").exit_code == 2


class TestCentralizer:
    def test_n2(self, tmp_path):
        out = tmp_path / "c.json"
        result = invoke("centralizer", "--n", "2", "--max-degree", "6", "--json", str(out))
        assert result.exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["pass"] is True
        assert payload["checks"][-1]["detail"].endswith("degrees 0..6")

    def test_n1(self):
        assert invoke("centralizer", "--n", "1", "--max-degree", "3").exit_code == 0

    def test_cap_exits_3(self):
        assert invoke("centralizer", "--n", "4", "--max-degree", "1").exit_code == 3

    def test_deterministic_json(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        invoke("centralizer", "--n", "2", "--max-degree", "3", "--json", str(first))
        invoke("centralizer", "--n", "2", "--max-degree", "3", "--json", str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_witnesses_printed(self):
        result = invoke("centralizer", "--n", "2", "--max-degree", "1", "--witnesses")
        assert "d=1: x[1,1] + x[2,2]" in result.output


class TestQuantum:
    @pytest.mark.parametrize("suite", ["commute", "limit", "det-central", "minor-convention", "rewriting"])
    def test_suites_n2(self, suite):
        assert invoke("quantum", suite, "--n", "2").exit_code == 0

    def test_cap_exits_3(self):
        assert invoke("quantum", "commute", "--n", "4").exit_code == 3


class TestLeafRank:
    def test_rank_sl(self, tmp_path):
        out = tmp_path / "rank.json"
        result = invoke("rank", "--space", "sl", "--n", "2", "--samples", "100", "--seed", "7", "--json", str(out))
        assert result.exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["seed"] == 7
        assert payload["checks"][0]["name"] == "rank-reached"

    def test_rank_m_reaches_largest_even_rank(self, tmp_path):
        out = tmp_path / "rank.json"
        result = invoke("rank", "--space", "m", "--n", "2", "--samples", "20", "--json", str(out))
        assert result.exit_code == 0
        checks = {check["name"]: check for check in json.loads(out.read_text())["checks"]}
        assert checks["rank-reached"]["pass"]
        assert "target 2, stated 3" in checks["rank-reached"]["detail"]
        assert checks["rank-bound"]["pass"]

    def test_rank_fails_at_the_zero_matrix(self, monkeypatch, tmp_path):
        monkeypatch.setattr(leafrank_service, "sample_point", lambda rng, n, space: [0] * (n * n))
        out = tmp_path / "rank.json"
        result = invoke("rank", "--space", "m", "--n", "2", "--samples", "1", "--json", str(out))
        assert result.exit_code == 1
        payload = json.loads(out.read_text())
        assert not payload["pass"]
        assert payload["checks"][0]["name"] == "rank-reached"
        assert "max rank 0 over 1 samples" in payload["checks"][0]["detail"]

    def test_weyl(self):
        assert invoke("weyl", "--n", "3").exit_code == 0

    def test_weyl_cap(self):
        assert invoke("weyl", "--n", "6").exit_code == 3

    def test_gap(self, tmp_path):
        out = tmp_path / "gap.json"
        assert invoke("gap", "--space", "sl", "--n", "3", "--json", str(out)).exit_code == 0
        payload = json.loads(out.read_text())
        assert "required 5, actual 2: not integrable" in payload["checks"][0]["detail"]
        assert "seed" not in payload

    def test_bad_space(self):
        assert invoke("rank", "--space", "so", "--n", "2").exit_code == 2
