"""Tests for JSON, CSV and Graphviz output."""

from app.models.results import CheckResult
from app.services.constructions import FiniteTree
from app.services.exporters import dumps_csv, dumps_json, hasse_dot, level_json, to_plain, tree_dot


class TestJson:
    """Test deterministic JSON output."""

    def test_sorted_compact(self):
        assert dumps_json({"b": 1, "a": (1, 2)}) == '{"a":[1,2],"b":1}\n'

    def test_sets_are_sorted(self):
        assert dumps_json({3, 1, 2}) == "[1,2,3]\n"

    def test_models_are_dumped(self):
        plain = to_plain(CheckResult(name="a", passed=True))

        assert plain["name"] == "a"
        assert plain["passed"] is True

    def test_unicode_kept(self):
        assert dumps_json("ω") == '"ω"\n'


class TestCsv:
    def test_rows(self):
        assert dumps_csv(["alpha", "beta"], [[0, 1], [1, 2]]) == "alpha,beta\n0,1\n1,2\n"


class TestLevelDocument:
    """Test level documents."""

    def test_tstar_level_two(self, tstar):
        document = level_json(tstar, 2)

        assert document["type"] == "tstar"
        assert document["m"] == 4
        assert len(document["sets"]) == 8
        assert document["sets"][0] == {"rank": 0, "elements": [0]}
        assert document["sets"][-1] == {"rank": 2, "elements": [0, 1, 2, 3]}


class TestDot:
    """Test Graphviz renderings."""

    def test_hasse_level_one(self, tstar):
        assert hasse_dot(tstar, 1) == (
            "digraph scheme {\n"
            "    rankdir=BT;\n"
            "    node [shape=box];\n"
            '    "0";\n'
            '    "1";\n'
            '    "0,1";\n'
            '    "0" -> "0,1";\n'
            '    "1" -> "0,1";\n'
            "}\n"
        )

    def test_hasse_keeps_covers_only(self, tstar):
        dot = hasse_dot(tstar, 2)

        assert '"0,1" -> "0,1,2,3";' in dot
        assert '"0" -> "0,1,2,3";' not in dot

    def test_tree(self):
        tree = FiniteTree({"a": None, "b": "a", "c": "a"})

        assert tree_dot(tree, name="t") == (
            'digraph t {\n    rankdir=BT;\n    "a";\n    "a" -> "b";\n    "a" -> "c";\n}\n'
        )
