"""Static SVG renderings of sweep CSVs and constellation JSON files."""

from __future__ import annotations

import math

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from . import constellations as cst
from .errors import SchemaError
from .sweep import MI_COLUMNS, PAPR_COLUMNS, read_csv

matplotlib.rcParams["svg.hashsalt"] = "gam"


def _save_svg(fig: Figure, out_path) -> None:
    fig.savefig(out_path, format="svg", bbox_inches="tight")


def _group_curves(rows, y_col):
    groups: dict[tuple[str, int], list[tuple[float, float]]] = {}
    for r in rows:
        if not r[y_col]:
            continue  # error rows carry no value
        key = (r["scheme"], int(r["M"]))
        groups.setdefault(key, []).append((float(r["snr_db"]), float(r[y_col])))
    return {k: sorted(v) for k, v in groups.items()}


def plot_mi_curves(csv_path, out_path) -> None:
    """MI vs SNR, one curve per (scheme, M), with the capacity curve on top."""
    _, rows = read_csv(csv_path, MI_COLUMNS)
    groups = _group_curves(rows, "mi_bits")
    fig = Figure(figsize=(7.5, 5.5))
    ax = fig.add_subplot(111)
    snr_all = [float(r["snr_db"]) for r in rows]
    grid = np.linspace(min(snr_all), max(snr_all), 200)
    ax.plot(grid, np.log2(1.0 + 10.0 ** (grid / 10.0)), "k-", lw=2,
            label="AWGN capacity")
    for (scheme, m), pts in sorted(groups.items()):
        if scheme == "capacity":
            continue
        x, y = zip(*pts)
        label = f"{scheme} H={math.log2(m):g}" if m else scheme
        ax.plot(x, y, marker=".", lw=1.4, label=label)
    ax.set_xlabel("SNR [dB]")
    ax.set_ylabel("MI [bits/symbol]")
    ax.grid(True, alpha=0.4)
    ax.legend(fontsize=8)
    _save_svg(fig, out_path)


def plot_papr_curves(csv_path, out_path) -> None:
    """PAPR vs SNR, one curve per (scheme, M)."""
    _, rows = read_csv(csv_path, PAPR_COLUMNS)
    groups = _group_curves(rows, "papr_db")
    fig = Figure(figsize=(7.5, 5.5))
    ax = fig.add_subplot(111)
    for (scheme, m), pts in sorted(groups.items()):
        x, y = zip(*pts)
        ax.plot(x, y, marker=".", lw=1.4, label=f"{scheme} M={m}")
    ax.set_xlabel("SNR [dB]")
    ax.set_ylabel("PAPR [dB]")
    ax.grid(True, alpha=0.4)
    ax.legend(fontsize=8)
    _save_svg(fig, out_path)


def plot_constellation(json_path, out_path) -> None:
    """Equal-aspect scatter of a constellation JSON export."""
    try:
        c = cst.read_json(json_path)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{json_path}: not a constellation JSON ({exc})") from exc
    fig = Figure(figsize=(6, 6))
    ax = fig.add_subplot(111)
    ax.scatter(c.points.real, c.points.imag, s=max(3, 600 // c.M), c="#4C72B0")
    peak = math.sqrt(c.mean_power) * 10.0 ** (cst.papr_db(c) / 20.0)
    circle = matplotlib.patches.Circle((0, 0), peak, fill=False,
                                       color="gray", ls="--", lw=0.8)
    ax.add_patch(circle)
    ax.set_aspect("equal")
    lim = 1.1 * peak
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(f"{c.scheme_tag} M={c.M} PAPR={cst.papr_db(c):.2f} dB")
    ax.grid(True, alpha=0.3)
    _save_svg(fig, out_path)


PLOT_KINDS = {
    "mi-curves": plot_mi_curves,
    "papr-curves": plot_papr_curves,
    "constellation-scatter": plot_constellation,
}


def render(kind: str, in_path, out_path) -> None:
    try:
        fn = PLOT_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown plot kind {kind!r}; expected one of "
                         f"{tuple(PLOT_KINDS)}") from None
    fn(in_path, out_path)
