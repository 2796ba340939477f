"""Render sweep and spectrum CSVs as figure files.

Uses the non-interactive Agg backend; output bytes are deterministic for
identical input (figure metadata carries no timestamps).  Only the CSV is
consulted - nothing is recomputed.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _read_columns(csv_path: str | Path, required: tuple[str, ...]) -> dict[str, list[float]]:
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [name for name in required if name not in header]
        if missing:
            raise ValueError(f"{csv_path}: missing columns {', '.join(missing)}")
        columns: dict[str, list[float]] = {name: [] for name in required}
        for row in reader:
            for name in required:
                columns[name].append(float(row[name]))
    if not columns[required[0]]:
        raise ValueError(f"{csv_path}: no data rows")
    return columns


def plot_sweep(
    csv_path: str | Path,
    out_path: str | Path,
    x_label: str = "sweep coordinate",
) -> None:
    """Two-curve probability figure (p_plus above p_minus) from a sweep CSV."""
    cols = _read_columns(csv_path, ("sweep_coordinate", "p_plus", "p_minus"))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(cols["sweep_coordinate"], cols["p_plus"], label=r"$P^+_E/\mathcal{N}$")
    ax.plot(cols["sweep_coordinate"], cols["p_minus"], label=r"$P^-_E/\mathcal{N}$")
    ax.set_xlabel(x_label)
    ax.set_ylabel(r"$P^\pm_E/\mathcal{N}$")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150, metadata={"Date": None})
    plt.close(fig)


def plot_spectrum(csv_path: str | Path, out_path: str | Path) -> None:
    """Regular/total spectrum curves over detector energy from a spectrum CSV."""
    cols = _read_columns(csv_path, ("K", "regular_part", "total"))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(cols["K"], cols["regular_part"], label="regular part")
    singular = any(t != r for t, r in zip(cols["total"], cols["regular_part"]))
    if singular:
        ax.plot(cols["K"], cols["total"], label="total (with singular offset)")
    ax.set_xlabel("K")
    ax.set_ylabel(r"$\hat{W}(K)$")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150, metadata={"Date": None})
    plt.close(fig)
