"""
Sweep output: CSV and JSON tables, and the fidelity-vs-b SVG line chart.

Files are written in one go after the sweep; identical records give
byte-identical files.
"""

import logging
from collections.abc import Sequence
from pathlib import Path

import pandas as pd
from pydantic import TypeAdapter

from cavity_swap.errors import ConfigError
from cavity_swap.models.enums import OutputFormat
from cavity_swap.models.records import SWEEP_COLUMNS, SweepRecord

logger = logging.getLogger(__name__)

_RECORDS = TypeAdapter(list[SweepRecord])
SVG_HASH_SALT = "cavity-swap"


def records_frame(records: Sequence[SweepRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump(mode="json") for r in records], columns=list(SWEEP_COLUMNS))


def render_csv(records: Sequence[SweepRecord]) -> str:
    return records_frame(records).to_csv(index=False, lineterminator="\n")


def render_json(records: Sequence[SweepRecord]) -> str:
    return _RECORDS.dump_json(list(records), indent=2).decode() + "\n"


def render(records: Sequence[SweepRecord], fmt: OutputFormat) -> str:
    return render_csv(records) if fmt == OutputFormat.CSV else render_json(records)


def write_records(records: Sequence[SweepRecord], path: Path, fmt: OutputFormat) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(records, fmt))
    logger.info("wrote %d records to %s", len(records), path)
    return path


def write_plot(records: Sequence[SweepRecord], path: Path) -> Path:
    """Fidelity vs b, simulated (solid) against the closed form (dashed)."""
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as e:
        raise ConfigError("plotting requires extras: pip install cavity-swap[plot]") from e

    frame = records_frame(records)
    with plt.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        for (k, gt), group in frame.groupby(["k", "gt"], sort=True):
            ax.plot(group["b"], group["fidelity"], label=f"k={k:g}, gt={gt:.4g}")
            ax.plot(group["b"], group["fidelity_formula"], linestyle="--", color="grey", linewidth=0.8)
        ax.axhline(0.9, color="lightgrey", linewidth=0.8)
        ax.set_xlabel("b")
        ax.set_ylabel("fidelity")
        ax.set_ylim(0, 1.02)
        ax.legend(loc="lower right")
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.info("wrote plot to %s", path)
    return path
