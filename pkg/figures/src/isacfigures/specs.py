"""Plot specifications and CSV access.

The renderers do no numerical work beyond sorting, binning/pivoting, and
axis-unit scaling; every number comes from the benchmark CSVs.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field


class MissingColumnError(KeyError):
    """A referenced CSV column does not exist."""


class EmptyCsvError(ValueError):
    """The CSV holds no data rows."""


CDF = "cdf"
LINE = "line"
BAR = "bar"
SURFACE = "surface"
CORRELATION_DB = "correlation-db"

KINDS = (CDF, LINE, BAR, SURFACE, CORRELATION_DB)


@dataclass(frozen=True)
class Series:
    """One curve: column `y` (against `x` when given) from a CSV file."""

    csv: str
    y: str
    x: str = ""
    label: str = ""
    where: tuple = ()      # optional (column, value) equality filters
    drop: tuple = ()       # optional (column, value) row exclusions
    x_scale: float = 1.0   # axis-unit conversion only (e.g. Hz -> MHz)
    y_scale: float = 1.0


@dataclass(frozen=True)
class PlotSpec:
    kind: str
    series: tuple
    output: str
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""
    logx: bool = False
    logy: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")


def read_csv(path: str) -> tuple[dict, list[str], list[list[str]]]:
    """Benchmark CSV: '#'-prefixed metadata, a header row, data rows."""
    meta: dict = {}
    header: list[str] | None = None
    rows: list[list[str]] = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                meta[key.strip()] = value.strip()
            elif header is None:
                header = line.split(",")
            else:
                rows.append(line.split(","))
    if header is None or not rows:
        raise EmptyCsvError(f"{path} holds no data rows")
    return meta, header, rows


def column(path: str, name: str, where: tuple = (), drop: tuple = ()) -> list[float]:
    _, header, rows = read_csv(path)
    if name not in header:
        raise MissingColumnError(f"{path} has no column {name!r} (has {header})")
    idx = header.index(name)

    def indexed(pairs):
        out = []
        for fcol, fval in pairs:
            if fcol not in header:
                raise MissingColumnError(f"{path} has no column {fcol!r}")
            out.append((header.index(fcol), float(fval)))
        return out

    keep = indexed(where)
    skip = indexed(drop)

    def matches(row, fi, fv):
        return abs(float(row[fi]) - fv) < 1e-12 * max(1.0, abs(fv))

    out = []
    for row in rows:
        if all(matches(row, fi, fv) for fi, fv in keep) and \
                not any(matches(row, fi, fv) for fi, fv in skip):
            out.append(float(row[idx]))
    return out


def find_csv(data_dir: str, filename: str) -> str:
    """Locate a benchmark CSV in data_dir or any subdirectory."""
    direct = os.path.join(data_dir, filename)
    if os.path.exists(direct):
        return direct
    for root, _dirs, files in os.walk(data_dir):
        if filename in files:
            return os.path.join(root, filename)
    raise FileNotFoundError(f"{filename} not found under {data_dir}")
