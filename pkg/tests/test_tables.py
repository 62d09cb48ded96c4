"""
Unit tests for the reference tables.

Tests cover:
- agreement with the stored golden files
- deterministic serialization
"""

import json
from pathlib import Path

from src.tables import dumps, table1, table2, table3, write_tables

GOLDEN = Path(__file__).parent / "golden"


class TestTables:
    """Rebuilt tables against the golden copies."""

    def test_table1(self):
        assert dumps(table1()) == (GOLDEN / "table1.json").read_text()

    def test_table2(self):
        assert dumps(table2()) == (GOLDEN / "table2.json").read_text()

    def test_table3(self):
        assert dumps(table3()) == (GOLDEN / "table3.json").read_text()

    def test_truncated_entries_are_empty(self):
        """P_{p+1;1} is listed and vanishes."""
        last = [row for row in table2() if (row["p"], row["n"]) == (2, 3)]
        assert [row["coefficients"] for row in last] == [[], []]


class TestWriteTables:
    """Files on disk."""

    def test_writes_three_files(self, tmp_path):
        paths = write_tables(str(tmp_path / "out"))
        assert [path.name for path in paths] == ["table1.json", "table2.json", "table3.json"]
        for path in paths:
            assert path.read_text() == (GOLDEN / path.name).read_text()

    def test_deterministic(self, tmp_path):
        first = [path.read_bytes() for path in write_tables(str(tmp_path / "a"))]
        second = [path.read_bytes() for path in write_tables(str(tmp_path / "b"))]
        assert first == second

    def test_dumps_sorted(self):
        text = dumps([{"q": 1, "p": 2, "coefficients": ["1/1"]}])
        assert json.loads(text) == {"entries": [{"coefficients": ["1/1"], "p": 2, "q": 1}]}
        assert text.index('"p"') < text.index('"q"')
        assert text.endswith("\n")
