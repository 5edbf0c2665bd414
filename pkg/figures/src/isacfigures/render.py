"""Render a PlotSpec to an image file."""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .specs import CDF, CORRELATION_DB, LINE, BAR, SURFACE, PlotSpec, column

DB_FLOOR = 1e-8  # -80 dB


def _series_xy(s):
    y = np.array(column(s.csv, s.y, s.where, s.drop)) * s.y_scale
    if s.x:
        x = np.array(column(s.csv, s.x, s.where, s.drop)) * s.x_scale
    else:
        x = np.arange(y.size, dtype=float) * s.x_scale
    order = np.argsort(x, kind="stable")
    return x[order], y[order]


def render(spec: PlotSpec) -> str:
    """Write the figure described by spec; returns the output path."""
    os.makedirs(os.path.dirname(spec.output) or ".", exist_ok=True)
    if spec.kind == SURFACE:
        return _render_surface(spec)
    fig, ax = plt.subplots(figsize=(6.0, 4.0), dpi=120)
    for s in spec.series:
        if spec.kind == CDF:
            vals = np.sort(np.array(column(s.csv, s.y, s.where, s.drop)) * s.y_scale)
            cdf = np.arange(1, vals.size + 1) / vals.size
            ax.step(vals, cdf, where="post", label=s.label or s.y)
        elif spec.kind == LINE:
            x, y = _series_xy(s)
            ax.plot(x, y, marker=".", label=s.label or s.y)
        elif spec.kind == BAR:
            x, y = _series_xy(s)
            ax.bar(x, y, width=0.9 * (x[1] - x[0] if x.size > 1 else 1.0),
                   label=s.label or s.y)
        elif spec.kind == CORRELATION_DB:
            x, y = _series_xy(s)
            ax.plot(x, 10.0 * np.log10(np.maximum(y, DB_FLOOR)),
                    label=s.label or s.y)
    if spec.logx:
        ax.set_xscale("log")
    if spec.logy:
        ax.set_yscale("log")
    if spec.kind == CORRELATION_DB:
        ax.set_ylim(bottom=-80.0)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.title)
    if len(spec.series) > 1 or any(s.label for s in spec.series):
        ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    return spec.output


def _render_surface(spec: PlotSpec) -> str:
    fig = plt.figure(figsize=(6.5, 5.0), dpi=120)
    ax = fig.add_subplot(projection="3d")
    for s in spec.series:
        x = np.array(column(s.csv, s.x, s.where, s.drop)) * s.x_scale
        y = np.array(column(s.csv, spec.extra["y_col"], s.where, s.drop))
        z = np.array(column(s.csv, s.y, s.where, s.drop)) * s.y_scale
        xs = np.unique(x)
        ys = np.unique(y)
        grid = np.full((ys.size, xs.size), np.nan)
        for xv, yv, zv in zip(x, y, z):
            grid[np.searchsorted(ys, yv), np.searchsorted(xs, xv)] = zv
        xm, ym = np.meshgrid(xs, ys)
        ax.plot_surface(xm, ym, grid, alpha=0.8, label=s.label)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.extra.get("ylabel_grid", ""))
    ax.set_zlabel(spec.ylabel)
    ax.set_title(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    return spec.output


def render_all(specs) -> list[str]:
    """Render every spec; an empty list is a no-op."""
    return [render(spec) for spec in specs]
