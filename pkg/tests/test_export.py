"""Tests for sampled data export.

Tests the sampled frames and the CSV/Parquet writers on small grids.
"""

import tempfile
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from src.export import ExportConfig, export_samples, parse_what, sample_frame
from src.model import ModelParams

SMALL = ExportConfig(xmin=-2.0, xmax=2.0, samples=41)


def test_parse_what():
    """Recognized sample kinds."""
    assert parse_what("potential") == ("potential", None)
    assert parse_what("weight") == ("weight", None)
    assert parse_what("state:2,3") == ("state", (2, 3))


@pytest.mark.parametrize("what", ["energy", "state:1", "state:a,b"])
def test_parse_what_rejects(what):
    with pytest.raises(ValueError):
        parse_what(what)


def test_invalid_format():
    with pytest.raises(ValueError):
        ExportConfig(format="xlsx")


def test_potential_frame():
    """Potential columns and the oscillator values x² − 1."""
    df = sample_frame(ModelParams(0, 0), "potential", SMALL)
    assert list(df.columns) == ["x", "V", "p", "q"]
    assert len(df) == 41
    assert np.allclose(df["V"], df["x"] ** 2 - 1)


def test_state_frame():
    """Eigenstate columns carry the level energy."""
    df = sample_frame(ModelParams(2, 1), "state:2,1", SMALL)
    assert list(df.columns) == ["x", "phi", "E", "p", "q"]
    assert (df["E"] == 12).all()
    assert (df["q"] == 1).all()


def test_weight_frame():
    df = sample_frame(ModelParams(1, 1), "weight", SMALL)
    assert (df["mu"] > 0).all()
    assert df["mu"].iloc[20] == pytest.approx(1 / 12)


def test_csv_export():
    """CSV written and readable."""
    with tempfile.TemporaryDirectory() as tmpdir:
        output_file = Path(tmpdir) / "nested" / "potential.csv"
        path = export_samples(ModelParams(1, 1), "potential", str(output_file), SMALL)

        assert path == output_file
        assert output_file.exists(), "CSV file not created"
        df = pd.read_csv(output_file)
        assert len(df) == 41, "Wrong number of samples"
        assert "V" in df.columns, "Missing V column"


def test_parquet_export():
    """Parquet written and readable."""
    pytest.importorskip("pyarrow")
    cfg = ExportConfig(xmin=-2.0, xmax=2.0, samples=41, format="parquet")

    with tempfile.TemporaryDirectory() as tmpdir:
        output_file = Path(tmpdir) / "state.parquet"
        export_samples(ModelParams(2, 1), "state:1,2", str(output_file), cfg)

        assert output_file.exists(), "Parquet file not created"
        df = pd.read_parquet(output_file)
        assert len(df) == 41, "Wrong number of samples"
        assert (df["E"] == 4).all()
