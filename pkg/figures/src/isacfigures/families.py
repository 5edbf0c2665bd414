"""One PlotSpec builder per figure family.

Every builder locates its benchmark CSV under the data directory and returns
the specs to render; the renderers only sort, bin, and rescale axis units.
"""
from __future__ import annotations

import os

from .specs import (
    BAR,
    CDF,
    CORRELATION_DB,
    LINE,
    SURFACE,
    PlotSpec,
    Series,
    find_csv,
    read_csv,
)


def _out(out_dir: str, name: str) -> str:
    return os.path.join(out_dir, name)


def _unique(path: str, col: str) -> list[float]:
    _, header, rows = read_csv(path)
    idx = header.index(col)
    return sorted({float(r[idx]) for r in rows})


def isl_cdf(data_dir, out_dir):
    path = find_csv(data_dir, "isl_cdf.csv")
    _, header, _ = read_csv(path)
    series = tuple(Series(path, c, label=c.removeprefix("isl_"))
                   for c in header if c.startswith("isl_"))
    return [PlotSpec(CDF, series, _out(out_dir, "isl_cdf.png"),
                     xlabel="normalized ISL", ylabel="CDF",
                     title="ISL distribution by constellation order")]


def otfs_cdf(data_dir, out_dir):
    path = find_csv(data_dir, "otfs_pilot_cdf.csv")
    _, header, _ = read_csv(path)
    specs = []
    for axis in ("delay", "doppler"):
        cols = [c for c in header if c.startswith(f"isl_{axis}_")]
        series = tuple(Series(path, c, label=c.rsplit("_", 1)[-1].replace("p", "pilots "))
                       for c in cols)
        specs.append(PlotSpec(
            CDF, series, _out(out_dir, f"otfs_isl_cdf_{axis}.png"),
            xlabel="delay-window ISL", ylabel="CDF",
            title=f"OTFS ISL with pilots along the {axis} axis", logx=True))
    return specs


def solver_cdf(data_dir, out_dir):
    path = find_csv(data_dir, "solver_compare.csv")
    series = (Series(path, "obj_two_stage", label="two-stage"),
              Series(path, "obj_single_stage", label="projected gradient"))
    ratio = (Series(path, "ratio", label="two-stage / reference"),)
    return [
        PlotSpec(CDF, series, _out(out_dir, "solver_objectives_cdf.png"),
                 xlabel="objective", ylabel="CDF",
                 title="Allocator objective across fading draws"),
        PlotSpec(CDF, ratio, _out(out_dir, "solver_ratio_cdf.png"),
                 xlabel="objective ratio", ylabel="CDF",
                 title="Two-stage vs reference objective ratio"),
    ]


def se_distance(data_dir, out_dir):
    path = find_csv(data_dir, "se_vs_distance.csv")
    bands = _unique(path, "bandwidth_hz")
    series = []
    rates = []
    for w in bands:
        tag = f"{w / 1e6:g} MHz"
        series.append(Series(path, "se_gaussian", x="distance_m",
                             label=f"Gaussian {tag}", where=(("bandwidth_hz", w),)))
        series.append(Series(path, "se_qpsk", x="distance_m",
                             label=f"QPSK {tag}", where=(("bandwidth_hz", w),)))
        rates.append(Series(path, "rate_gaussian_bps", x="distance_m", y_scale=1e-9,
                            label=f"Gaussian {tag}", where=(("bandwidth_hz", w),)))
        rates.append(Series(path, "rate_qpsk_bps", x="distance_m", y_scale=1e-9,
                            label=f"QPSK {tag}", where=(("bandwidth_hz", w),)))
    return [
        PlotSpec(LINE, tuple(series), _out(out_dir, "se_vs_distance.png"),
                 xlabel="distance (m)", ylabel="spectral efficiency (b/s/Hz)",
                 title="Gaussian vs QPSK spectral efficiency", logy=True),
        PlotSpec(LINE, tuple(rates), _out(out_dir, "rate_vs_distance.png"),
                 xlabel="distance (m)", ylabel="rate (Gb/s)",
                 title="Total rate over distance", logy=True),
    ]


def gap_region(data_dir, out_dir):
    path = find_csv(data_dir, "gap_region.csv")
    specs = []
    for tol in _unique(path, "tolerance"):
        s = Series(path, "min_bandwidth_hz", x="distance_m", y_scale=1e-9,
                   where=(("tolerance", tol),),
                   drop=(("min_bandwidth_hz", -1.0),))
        specs.append(PlotSpec(
            SURFACE, (s,), _out(out_dir, f"gap_region_tol{tol:g}.png"),
            xlabel="distance (m)", ylabel="min bandwidth (GHz)",
            title=f"Bandwidth needed for relative gap <= {tol:g}",
            extra={"y_col": "tx_power_w", "ylabel_grid": "tx power (W)"}))
    return specs


def allocation(data_dir, out_dir):
    path = find_csv(data_dir, "allocation_demo.csv")
    specs = []
    for alpha in _unique(path, "alpha"):
        where = (("alpha", alpha),)
        series = (
            Series(path, "x_stage1", x="subcarrier", label="stage 1",
                   where=where, y_scale=1e6),
            Series(path, "x_final", x="subcarrier", label="final",
                   where=where, y_scale=1e6),
        )
        specs.append(PlotSpec(
            LINE, series, _out(out_dir, f"allocation_alpha{alpha:g}.png"),
            xlabel="subcarrier", ylabel="power (uW)",
            title=f"Power allocation, trade-off weight {alpha:g}"))
    return specs


def correlation(data_dir, out_dir):
    path = find_csv(data_dir, "allocation_correlation.csv")
    _, header, _ = read_csv(path)
    series = tuple(Series(path, c, x="lag", label=c.removeprefix("corr_"))
                   for c in header if c.startswith("corr_"))
    return [PlotSpec(CORRELATION_DB, series,
                     _out(out_dir, "allocation_correlation.png"),
                     xlabel="lag", ylabel="normalized |r(l)|^2 (dB)",
                     title="Autocorrelation of allocated waveforms")]


def isl_gap(data_dir, out_dir):
    path = find_csv(data_dir, "isl_gap.csv")
    series = (Series(path, "rel_err", x="n_subcarriers", label="mean-ISL gap"),
              Series(path, "rel_err_per_trial", x="n_subcarriers",
                     label="per-trial gap"))
    return [PlotSpec(LINE, series, _out(out_dir, "isl_gap.png"),
                     xlabel="subcarriers", ylabel="relative ISL error",
                     title="Aperiodic vs circular ISL agreement",
                     logx=True, logy=True)]


def tradeoff(data_dir, out_dir):
    path = find_csv(data_dir, "tradeoff_sweep.csv")
    return [
        PlotSpec(LINE, (Series(path, "mean_sum_rate_bps", x="alpha", y_scale=1e-9),),
                 _out(out_dir, "tradeoff_rate.png"),
                 xlabel="trade-off weight", ylabel="sum rate (Gb/s)",
                 title="Rate across the trade-off sweep", logy=True),
        PlotSpec(LINE, (Series(path, "mean_rms_bandwidth_hz", x="alpha",
                               y_scale=1e-6),),
                 _out(out_dir, "tradeoff_rms_bandwidth.png"),
                 xlabel="trade-off weight", ylabel="RMS bandwidth (MHz)",
                 title="RMS bandwidth across the trade-off sweep"),
    ]


def crb(data_dir, out_dir):
    path = find_csv(data_dir, "crb_validate.csv")
    series = (Series(path, "crb_m2", x="snr_db", label="CRB"),
              Series(path, "empirical_mse_m2", x="snr_db", label="matched filter"))
    return [PlotSpec(LINE, series, _out(out_dir, "crb_validate.png"),
                     xlabel="per-sample SNR (dB)", ylabel="ranging MSE (m^2)",
                     title="Delay-estimation MSE vs the CRB", logy=True)]


def psl(data_dir, out_dir):
    path = find_csv(data_dir, "psl_law.csv")
    series = (Series(path, "mean_norm_psl", x="n", label="measured"),
              Series(path, "law_value", x="n", label="sqrt(2 ln N / N)"))
    return [PlotSpec(LINE, series, _out(out_dir, "psl_law.png"),
                     xlabel="sequence length", ylabel="normalized peak sidelobe",
                     title="Peak sidelobe decay", logx=True, logy=True)]


def imaging(data_dir, out_dir):
    path = find_csv(data_dir, "imaging_convergence.csv")
    return [
        PlotSpec(LINE, (Series(path, "snr", x="span"),),
                 _out(out_dir, "imaging_snr.png"),
                 xlabel="averaging span", ylabel="SNR factor",
                 title="Imaging SNR vs averaging span"),
        PlotSpec(LINE, (Series(path, "rel_diff", x="span",
                               drop=(("rel_diff", -1.0),)),),
                 _out(out_dir, "imaging_rel_diff.png"),
                 xlabel="averaging span", ylabel="successive relative difference",
                 title="Imaging SNR convergence", logy=True),
    ]


FAMILIES = {
    "isl-cdf": isl_cdf,
    "otfs-cdf": otfs_cdf,
    "solver-cdf": solver_cdf,
    "se-distance": se_distance,
    "gap-region": gap_region,
    "allocation": allocation,
    "correlation": correlation,
    "isl-gap": isl_gap,
    "tradeoff": tradeoff,
    "crb": crb,
    "psl": psl,
    "imaging": imaging,
}
