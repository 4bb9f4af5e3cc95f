from pathlib import Path
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402
from loguru import logger  # noqa: E402

from src.core.exceptions import OutputError  # noqa: E402
from src.workflows.base import PlotSpec, WorkflowResult  # noqa: E402

MODULE = "OUTPUT"
FLOAT_FORMAT = "%.9g"
SVG_HASH_SALT = "microrobot-toolkit"


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    """Write a table with locale-independent formatting and LF line endings"""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        raise OutputError(MODULE, f"cannot write {path}: {e}")
    logger.info(f"Wrote {path} ({len(frame)} rows)")
    return path


def write_plot(spec: PlotSpec, frame: pd.DataFrame, path: Path) -> Optional[Path]:
    """Render one line chart as SVG; None when the table lacks the columns"""
    missing = [col for col in [spec.x, *spec.y] if col not in frame.columns]
    if missing:
        logger.warning(f"Plot {spec.name} skipped: table '{spec.table}' has no columns {missing}")
        return None

    plt.rcParams['svg.hashsalt'] = SVG_HASH_SALT
    fig, ax = plt.subplots(figsize=(6, 4))
    try:
        groups = frame.groupby(spec.group_by, sort=False) if spec.group_by else [(None, frame)]
        for label, group in groups:
            for column in spec.y:
                name = column if label is None else f"{label} {column}"
                ax.plot(group[spec.x], group[column], marker='o' if spec.group_by else None,
                        markersize=3, label=name)
        if spec.log_x:
            ax.set_xscale('log')
        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(spec.y_label)
        ax.grid(True, alpha=0.3)
        if len(spec.y) > 1 or spec.group_by:
            ax.legend(fontsize=8)
        fig.tight_layout()
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format='svg', metadata={'Date': None})
    except OSError as e:
        raise OutputError(MODULE, f"cannot write {path}: {e}")
    finally:
        plt.close(fig)
    logger.info(f"Wrote {path}")
    return path


def write_result(result: WorkflowResult, out_dir: str, plots: bool = False) -> List[Path]:
    """
    Write every table of a workflow result, then its plots

    Files are written in table insertion order, so reruns produce the same
    files in the same order.

    Returns:
        Paths written
    """
    directory = Path(out_dir)
    written = [write_csv(frame, directory / f"{name}.csv") for name, frame in result.tables.items()]
    if plots:
        for spec in result.plots:
            frame = result.tables.get(spec.table)
            if frame is None or frame.empty:
                logger.warning(f"Plot {spec.name} skipped: no data in '{spec.table}'")
                continue
            path = write_plot(spec, frame, directory / f"{spec.name}.svg")
            if path is not None:
                written.append(path)
    return written
