"""Tests for the schemes command line."""

import json

import pytest

from main import main


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestSchemeCommand:
    """Test scheme build, member and decompose."""

    def test_member(self, capsys):
        status, out, _ = run(capsys, "scheme", "member", "--set", "1,2")

        assert status == 0
        assert out == '{"member":false,"set":[1,2]}\n'

    def test_member_of_empty_set(self, capsys):
        status, out, err = run(capsys, "scheme", "member", "--set", "")

        assert status == 1
        assert out == ""
        assert json.loads(err.splitlines()[-1])["error"] == "PreconditionViolation"

    def test_member_with_rank(self, capsys):
        _, out, _ = run(capsys, "scheme", "member", "--set", "0,1,2,3")

        assert json.loads(out) == {"member": True, "rank": 2, "set": [0, 1, 2, 3]}

    def test_build_dot(self, capsys):
        status, out, _ = run(capsys, "scheme", "build", "--level", "1", "--format", "dot")

        assert status == 0
        assert out.startswith("digraph tstar {")
        assert '"0" -> "0,1";' in out

    def test_build_json(self, capsys):
        _, out, _ = run(capsys, "scheme", "build", "--level", "2")

        assert len(json.loads(out)["sets"]) == 8

    def test_decompose_rank_zero(self, capsys):
        status, out, err = run(capsys, "scheme", "decompose", "--set", "5")

        assert status == 1
        assert out == ""
        assert json.loads(err.splitlines()[-1])["error"] == "RankZero"

    def test_budget_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("SCHEME_ELEMENT_BUDGET", "10")

        status, _, err = run(capsys, "scheme", "build", "--level", "3")

        assert status == 2
        assert "LevelTooDeep" in err

    def test_fixed_run_id(self, capsys, monkeypatch):
        """Test LOG_RUN_ID stamps every log record."""
        monkeypatch.setenv("LOG_RUN_ID", "run_fixed")
        monkeypatch.setenv("LOG_FORMAT", "json")

        status, _, err = run(capsys, "scheme", "decompose", "--set", "5")

        records = [json.loads(line) for line in err.splitlines()]
        logs = [record for record in records if "seq" in record]
        assert status == 1
        assert logs
        assert all(record["run_id"] == "run_fixed" for record in logs)


class TestMetricCommand:
    """Test metric queries."""

    def test_rho(self, capsys):
        assert run(capsys, "metric", "rho", "--a", "1", "--b", "2")[:2] == (0, "2\n")

    def test_delta_infinity(self, capsys):
        assert run(capsys, "metric", "delta", "--a", "4", "--b", "4")[1] == '"infinity"\n'

    def test_closure(self, capsys):
        assert run(capsys, "metric", "closure", "--a", "8", "--k", "2")[1] == "[0,1,8]\n"

    def test_missing_second_ordinal(self, capsys):
        status, out, err = run(capsys, "metric", "rho", "--a", "1")

        assert status == 1
        assert out == ""
        assert "needs --b" in err

    @pytest.mark.parametrize(
        "argv",
        [
            ("rho", "--a", "-1", "--b", "2"),
            ("delta", "--a", "3", "--b", "-4"),
            ("xi", "--a", "5", "--k", "-1"),
            ("closure", "--a", "-8", "--k", "2"),
        ],
    )
    def test_negative_arguments_rejected(self, capsys, argv):
        status, out, err = run(capsys, "metric", *argv)

        error = json.loads(err.splitlines()[-1])
        assert status == 1
        assert out == ""
        assert error["error"] == "PreconditionViolation"
        assert "non-negative" in error["message"]


class TestCaptureCommand:
    def test_scan(self, capsys):
        _, out, _ = run(
            capsys, "capture", "scan", "--family", "[[1],[2],[3]]", "--n", "3", "--window", "4"
        )

        assert json.loads(out) == [{"F": [0, 1, 2, 3], "indices": [0, 1, 2], "level": 2}]

    def test_tuple(self, capsys):
        _, out, _ = run(capsys, "capture", "tuple", "--set", "1,2,3")

        assert json.loads(out) == {"level": 2, "set": [1, 2, 3]}

    def test_empty_tuple(self, capsys):
        assert run(capsys, "capture", "tuple")[0] == 1


class TestConstructCommand:
    """Test construction output."""

    def test_gap(self, capsys):
        status, out, _ = run(capsys, "construct", "gap", "--alpha", "2", "--depth", "3")

        assert status == 0
        assert out == '{"A":[3,5,6],"B":[2,4,7]}\n'

    def test_gap_on_non_binary_type(self, capsys):
        status, _, err = run(capsys, "construct", "gap", "--type", "tstar")

        assert status == 1
        assert "NonBinaryType" in err

    def test_coherent_family_csv(self, capsys):
        _, out, _ = run(
            capsys,
            "construct",
            "coherent_family",
            "--alpha",
            "2",
            "--depth",
            "2",
            "--format",
            "csv",
        )

        assert out == "level,i,j,s,value\n2,0,0,0,0\n2,0,0,1,0\n"

    def test_aronszajn_modified(self, capsys):
        _, out, _ = run(capsys, "construct", "aronszajn", "--alpha", "3", "--modify", "0:2")

        node = json.loads(out)
        assert (node["k"], node["s"]) == (2, 4)

    def test_countryman_pair(self, capsys):
        _, out, _ = run(capsys, "construct", "countryman", "--alpha", "1", "--beta", "2")

        payload = json.loads(out)
        assert payload["less"] is True
        assert payload["chain"] == [2, 3, 2]

    def test_custom_type_document(self, capsys, temp_dir):
        path = temp_dir / "t2.json"
        path.write_text(json.dumps({"name": "mine", "prefix": [[2, 0], [2, 1], [2, 0]]}))

        _, out, _ = run(capsys, "scheme", "build", "--level", "2", "--type", str(path))

        document = json.loads(out)
        assert document["type"] == "mine"
        assert document["m"] == 3


class TestForceCommand:
    """Test forcing sessions through the command line."""

    def test_init_demand_snapshot(self, capsys, temp_dir):
        session = str(temp_dir / "lab")

        assert run(capsys, "force", "init", "--out", session)[0] == 0
        status, out, _ = run(capsys, "force", "demand", "--session", session, "--contain", "1")
        assert status == 0
        assert json.loads(out)["chosen"] == [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]]

        _, out, _ = run(capsys, "force", "snapshot", "--session", session)
        assert json.loads(out)["rank"] == 3

    def test_demand_without_session(self, capsys, temp_dir):
        status, _, err = run(
            capsys, "force", "demand", "--session", str(temp_dir / "none"), "--advance"
        )

        assert status == 1
        assert "no session" in err


class TestVerifyCommand:
    def test_unknown_suite(self, capsys):
        status, _, err = run(capsys, "verify", "nosuch")

        assert status == 1
        assert "UnknownSuite" in err

    def test_type_suite(self, capsys):
        status, out, _ = run(capsys, "verify", "type")

        assert status == 0
        assert json.loads(out)[0]["suite"] == "type"


def test_unknown_command_exits():
    with pytest.raises(SystemExit):
        main(["nonsense"])
