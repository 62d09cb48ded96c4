"""Sampled model data for plotting (CSV/Parquet).

Potential, weight and eigenstates are evaluated on a uniform grid and written
as a flat table. Plotting itself is left to the consumer.
"""

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional

import numpy as np
import pandas as pd

from src.config import SAMPLE_POINTS, SAMPLE_XMAX, SAMPLE_XMIN
from src.model import ModelParams, energy, potential, sample_grid, sample_state, weight
from src.ppoly import ppoly

logger = logging.getLogger(__name__)

FormatType = Literal["csv", "parquet"]

_STATE = re.compile(r"^state:(\d+),(\d+)$")


@dataclass
class ExportConfig:
    """Sampling grid and output format."""

    xmin: float = SAMPLE_XMIN
    xmax: float = SAMPLE_XMAX
    samples: int = SAMPLE_POINTS
    format: FormatType = "csv"

    def __post_init__(self):
        if self.format not in ("csv", "parquet"):
            raise ValueError(f"format must be 'csv' or 'parquet', got {self.format!r}")


def parse_what(what: str) -> tuple[str, Optional[tuple[int, int]]]:
    """'potential', 'weight' or 'state:j,n'."""
    if what in ("potential", "weight"):
        return what, None
    match = _STATE.match(what)
    if not match:
        raise ValueError(f"cannot sample {what!r}; use potential, weight or state:j,n")
    return "state", (int(match.group(1)), int(match.group(2)))


def sample_frame(params: ModelParams, what: str, cfg: Optional[ExportConfig] = None) -> pd.DataFrame:
    cfg = cfg or ExportConfig()
    kind, level = parse_what(what)
    xs = sample_grid(cfg.xmin, cfg.xmax, cfg.samples)

    df = pd.DataFrame({"x": xs})
    if kind == "potential":
        df["V"] = potential(params).evaluate(xs)
    elif kind == "weight":
        df["mu"] = weight(params).evaluate(xs)
    else:
        j, n = level
        df["phi"] = sample_state(params, ppoly(params.p, params.q, j, n), xs)
        df["E"] = energy(params, j, n)
    df["p"] = params.p
    df["q"] = params.q
    return df


def export_samples(
    params: ModelParams, what: str, output_path: str, cfg: Optional[ExportConfig] = None
) -> Path:
    """Write the sampled table and return its path."""
    cfg = cfg or ExportConfig()
    df = sample_frame(params, what, cfg)

    output_path_obj = Path(output_path)
    output_path_obj.parent.mkdir(parents=True, exist_ok=True)

    if cfg.format == "csv":
        df.to_csv(output_path_obj, index=False)
    elif cfg.format == "parquet":
        df.to_parquet(output_path_obj, index=False)

    if not np.all(np.isfinite(df.iloc[:, 1].to_numpy(dtype=float))):
        logger.warning("Non-finite samples in %s", output_path)
    logger.info("Exported %d %s samples to %s", len(df), what, output_path)
    return output_path_obj
