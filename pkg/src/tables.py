"""The reference tables: H_{p,q} and the two P_{n;j} families.

Each table is a list of entries with coefficients in the "num/den" JSON
contract, lowest power first. P_{n;j} entries are stored in their primitive
integer form.
"""

import json
import logging
from pathlib import Path

from src.genhermite import gh
from src.ppoly import ppoly, table_form

logger = logging.getLogger(__name__)

TABLE1_GRID = (3, 4)                             # p <= 3, q <= 4
TABLE2_BLOCKS = ((2, 1, 3), (2, 2, 3), (3, 1, 4))  # (p, q, last n), j = 1
TABLE3_BLOCKS = ((2, 1, 3), (2, 2, 3))             # (p, q, last n), j = 2


def table1() -> list[dict]:
    pmax, qmax = TABLE1_GRID
    return [
        {"p": p, "q": q, "coefficients": gh(p, q).to_json()}
        for q in range(1, qmax + 1)
        for p in range(1, pmax + 1)
    ]


def _ppoly_rows(j: int, blocks) -> list[dict]:
    rows = []
    for p, q, last in blocks:
        for n in range(1, last + 1):
            poly = table_form(ppoly(p, q, j, n))
            rows.append({"p": p, "q": q, "j": j, "n": n, "coefficients": poly.to_json()})
    return rows


def table2() -> list[dict]:
    return _ppoly_rows(1, TABLE2_BLOCKS)


def table3() -> list[dict]:
    return _ppoly_rows(2, TABLE3_BLOCKS)


def dumps(entries: list[dict]) -> str:
    return json.dumps({"entries": entries}, indent=2, sort_keys=True) + "\n"


def write_tables(out_dir: str) -> list[Path]:
    """Write table1.json, table2.json and table3.json into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, build in (("table1", table1), ("table2", table2), ("table3", table3)):
        path = out / f"{name}.json"
        entries = build()
        path.write_text(dumps(entries))
        logger.info("%s: %d entries -> %s", name, len(entries), path)
        written.append(path)
    return written
