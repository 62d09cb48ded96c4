#!/usr/bin/env python3
"""Write the reference tables (H_{p,q}, P_{n;1}, P_{n;2}) as JSON files.

Usage:
    python scripts/export_tables.py [output_dir]
"""

import logging
import os
import sys

from src.tables import write_tables

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
)


if __name__ == "__main__":
    output_dir = sys.argv[1] if len(sys.argv) > 1 else os.environ.get("TABLES_DIR", "tests/golden")
    print("Exporting tables...")
    for path in write_tables(output_dir):
        print(f"  {path.name} -> {path}")
    print("Done.")
