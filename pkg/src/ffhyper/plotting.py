"""Figures written next to the CSV and JSON-lines outputs of the CLI."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_bench(direct: Sequence[float], charsum: Sequence[float], path: Path | str,
               title: str = "") -> Path:
    """Per-instance wall time of both routes, sorted, on a log scale."""
    d = np.sort(np.asarray(direct, dtype=float)) * 1e3
    c = np.sort(np.asarray(charsum, dtype=float)) * 1e3
    fig, ax = plt.subplots(figsize=(6, 3.6))
    ax.plot(np.arange(len(d)), d, label=f"direct (median {np.median(d):.3f} ms)")
    ax.plot(np.arange(len(c)), c, label=f"charsum (median {np.median(c):.3f} ms)")
    ax.set_yscale("log")
    ax.set_xlabel("instance (sorted by time)")
    ax.set_ylabel("wall time [ms]")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_verify(tallies: Sequence[dict], path: Path | str, title: str = "") -> Path:
    """Stacked pass/fail counts per identity."""
    names = [t["identity"] for t in tallies]
    passed = np.array([t["passed"] for t in tallies])
    failed = np.array([t["failed"] for t in tallies])
    y = np.arange(len(names))
    fig, ax = plt.subplots(figsize=(6.4, 0.45 * len(names) + 1.4))
    ax.barh(y, passed, color="#3a7d44", label="pass")
    ax.barh(y, failed, left=passed, color="#c0392b", label="fail")
    ax.set_yticks(y, names)
    ax.invert_yaxis()
    ax.set_xlabel("instances")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, loc="lower right")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
