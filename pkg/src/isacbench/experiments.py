"""Declarative experiment registry and runner.

Each experiment maps a flat parameter set plus a master seed onto one or more
CSV tables; a JSON manifest echoes the resolved configuration so any run can
be reproduced bit-exactly.  Trial i always draws from a counter-derived
substream of the master seed, so growing the trial count never changes
earlier trials.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .allocator import (
    AllocProblem,
    _pg_batch,
    _project_batch,
    _stage1_batch,
    _waterfill_exact,
    baseband_weights,
    compute_zeta,
    two_stage,
)
from .channel import make_notched_profile
from .comm import LinkBudget, gap_region, se_vs_distance
from .ofdm import OfdmConfig, PowerAllocation, modulate_symbol
from .otfs import PilotScheme, place_pilots, synthesize_time
from .sensing import (
    RangingScenario,
    crb_ranging_mse,
    estimate_delay_mf,
    imaging_convergence,
    isl,
    isl_gap_curve,
    psl,
    rms_bandwidth,
)
from .signals import get_constellation

LN2 = math.log(2.0)

# Shared parameter presets for the link-budget and allocation scenarios.
LINK_BUDGET_PRESET = {
    "tx_power": 0.2,            # watts
    "noise_psd": 1e-18,         # W/Hz (-150 dBm/Hz)
    "pathloss_coeff": 35.0,     # dB per decade of distance
    "pathloss_intercept": 48.6,
}
ALLOCATION_PRESET = {
    "n_subcarriers": 1024,
    "bandwidth": 1e9,
    "tx_power": 0.2,
    "noise_psd": 1e-18,
    "attenuation_db": 50.0,
    "notch_centers": [260, 760],
    "notch_depth_db": 20.0,
    "notch_width": 32.0,
    "v0_over_p2": 1.0,          # variance budget V0 = v0_over_p2 * P^2
}


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent substream of the master seed for one trial."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


@dataclass
class CsvTable:
    name: str
    columns: list[str]
    rows: list[tuple]


@dataclass
class Experiment:
    name: str
    description: str
    defaults: dict
    runner: object
    columns_doc: dict = field(default_factory=dict)


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (list, tuple)):
        return str([(float(v) if isinstance(v, (float, np.floating)) else v)
                    for v in value])
    return str(value)


def write_csv(path: str, table: CsvTable, meta: dict) -> None:
    lines = [f"# {k} = {_fmt(v)}" for k, v in meta.items()]
    lines.append(",".join(table.columns))
    for row in table.rows:
        out = []
        for v in row:
            if isinstance(v, (float, np.floating)):
                v = float(v)
                if not math.isfinite(v):
                    raise ValueError(f"non-finite value in {table.name}: {row}")
                out.append(repr(v))
            elif isinstance(v, (int, np.integer)):
                out.append(str(int(v)))
            else:
                out.append(str(v))
        lines.append(",".join(out))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# experiment implementations
# ---------------------------------------------------------------------------

def _ofdm_isl_trial(args):
    seed, tag, trial, n, const_name = args
    rng = trial_rng(seed, tag, trial)
    const = get_constellation(const_name)
    cfg = OfdmConfig(n, 1.0, float(n), const)
    bits = rng.integers(0, 2, n * const.bits_per_symbol)
    sym = modulate_symbol(cfg, PowerAllocation.flat(n, float(n)), bits)
    return trial, isl(sym)


def run_isl_cdf(params, trials, seed, workers=1):
    n = params["n_subcarriers"]
    names = params["constellations"]
    cols = {}
    for tag, name in enumerate(names):
        jobs = [(seed, tag, t, n, name) for t in range(trials)]
        results = _map_jobs(_ofdm_isl_trial, jobs, workers)
        vals = [v for _, v in sorted(results)]
        cols[name] = vals
    rows = [(t, *[cols[name][t] for name in names]) for t in range(trials)]
    table = CsvTable("isl_cdf", ["trial"] + [f"isl_{n}" for n in names], rows)
    return [table]


def run_isl_gap(params, trials, seed, workers=1):
    rows = isl_gap_curve(params["n_list"], trials, params["constellation"], seed)
    table = CsvTable(
        "isl_gap",
        ["n_subcarriers", "isl_aperiodic", "isl_circular", "rel_err", "rel_err_per_trial"],
        [(r["n"], r["isl_aperiodic"], r["isl_circular"], r["rel_err"],
          r["rel_err_per_trial"]) for r in rows],
    )
    return [table]


def _otfs_trial(args):
    seed, tag, trial, m_tau, n_nu, axis, count, e_s, e_p, spacing = args
    rng = trial_rng(seed, tag, trial)
    grid = place_pilots(m_tau, n_nu, PilotScheme(axis, count), e_s, e_p, rng)
    sig = synthesize_time(grid, spacing)
    # delay-window circular ISL: sidelobes within one delay period
    return trial, isl(sig, mode="circular", max_lag=m_tau)


def run_otfs_pilot_cdf(params, trials, seed, workers=1):
    m_tau, n_nu = params["m_tau"], params["n_nu"]
    counts = params["pilot_counts"]
    axes = params["axes"]
    e_s, e_p = params["e_s"], params["e_p"]
    curves = {}
    tag = 0
    for axis in axes:
        for count in counts:
            jobs = [(seed, tag, t, m_tau, n_nu, axis, count, e_s, e_p,
                     params["subcarrier_spacing"]) for t in range(trials)]
            results = _map_jobs(_otfs_trial, jobs, workers)
            curves[(axis, count)] = [v for _, v in sorted(results)]
            tag += 1
    names = [f"isl_{axis}_p{count:02d}" for axis in axes for count in counts]
    rows = [(t, *[curves[(axis, count)][t] for axis in axes for count in counts])
            for t in range(trials)]
    return [CsvTable("otfs_pilot_cdf", ["trial"] + names, rows)]


def run_se_vs_distance(params, trials, seed, workers=1):
    budget = LinkBudget(params["tx_power"], params["bandwidths"][0],
                        params["noise_psd"], params["pathloss_coeff"],
                        params["pathloss_intercept"])
    distances = np.linspace(params["d_min"], params["d_max"], params["n_distances"])
    rows = se_vs_distance(budget, distances, params["bandwidths"])
    cols = ["bandwidth_hz", "distance_m", "snr", "se_gaussian", "se_qpsk",
            "rate_gaussian_bps", "rate_qpsk_bps", "rel_gap"]
    return [CsvTable("se_vs_distance", cols, [tuple(r[c] for c in cols) for r in rows])]


def run_gap_region(params, trials, seed, workers=1):
    budget = LinkBudget(params["tx_power"], params["bandwidths"][0],
                        params["noise_psd"], params["pathloss_coeff"],
                        params["pathloss_intercept"])
    powers = np.linspace(params["p_min"], params["p_max"], params["n_powers"])
    distances = np.linspace(params["d_min"], params["d_max"], params["n_distances"])
    bandwidths = np.geomspace(params["w_min"], params["w_max"], params["n_bandwidths"])
    rows = []
    for tol in params["tolerances"]:
        for r in gap_region(budget, powers, distances, bandwidths, tol):
            rows.append((tol, r["tx_power_w"], r["distance_m"], r["min_bandwidth_hz"]))
    # min_bandwidth may be NaN (infeasible at this tolerance); keep explicit
    table = CsvTable("gap_region",
                     ["tolerance", "tx_power_w", "distance_m", "min_bandwidth_hz"],
                     [(t, p, d, (w if math.isfinite(w) else -1.0)) for t, p, d, w in rows])
    return [table]


def _allocation_problem(params, gains):
    n = params["n_subcarriers"]
    p_bar = params["tx_power"] / n
    return AllocProblem(
        gains=gains,
        weights=baseband_weights(n, params["bandwidth"]),
        alpha=params["alpha"],
        mean_power=p_bar,
        variance_budget=params["v0_over_p2"] * p_bar ** 2,
        noise_psd=params["noise_psd"],
        bandwidth=params["bandwidth"],
    )


def _mean_correlation(x_alloc, seed, tag, draws=32):
    """Mean |r(l)|^2 / r(0)^2 of QPSK symbols carrying the allocation."""
    n = x_alloc.size
    const = get_constellation("qpsk")
    acc = np.zeros(n)
    for t in range(draws):
        rng = trial_rng(seed, tag, t)
        spec = np.sqrt(x_alloc) * const.points[rng.integers(0, 4, n)]
        sig = np.fft.ifft(spec, norm="ortho")
        nfft = 1 << int(2 * n - 1).bit_length()
        f = np.fft.fft(sig, nfft)
        r = np.fft.ifft(f * np.conj(f))[:n]
        acc += np.abs(r) ** 2 / np.abs(r[0]) ** 2
    return acc / draws


def run_allocation_demo(params, trials, seed, workers=1):
    profile = make_notched_profile(
        params["n_subcarriers"], params["notch_centers"], params["notch_depth_db"],
        params["notch_width"], params["attenuation_db"], fast=params["fast_fading"])
    gains = profile.realize(trial_rng(seed, 0, 0))
    rows = []
    corr_cols = {}
    for tag, alpha in enumerate(params["alphas"], start=1):
        prob = _allocation_problem({**params, "alpha": alpha}, gains)
        sol = two_stage(prob)
        for i in range(prob.n):
            rows.append((alpha, i, gains[i], prob.weights[i],
                         sol.stage1_x.x[i], sol.x.x[i]))
        label = f"a{alpha:g}".replace(".", "_")
        corr_cols[f"corr_stage1_{label}"] = _mean_correlation(sol.stage1_x.x, seed, 2 * tag)
        corr_cols[f"corr_final_{label}"] = _mean_correlation(sol.x.x, seed, 2 * tag + 1)
    names = list(corr_cols)
    corr_rows = [(lag, *[float(corr_cols[c][lag]) for c in names])
                 for lag in range(params["n_subcarriers"])]
    return [
        CsvTable("allocation_demo",
                 ["alpha", "subcarrier", "gain", "weight", "x_stage1", "x_final"],
                 rows),
        CsvTable("allocation_correlation", ["lag"] + names, corr_rows),
    ]


def _tradeoff_batch(params, trials, seed):
    """(alphas, draws) -> per-alpha sum rate and RMS bandwidth matrices."""
    n = params["n_subcarriers"]
    bw = params["bandwidth"]
    p_bar = params["tx_power"] / n
    v0 = params["v0_over_p2"] * p_bar ** 2
    total = n * p_bar
    profile = make_notched_profile(n, params["notch_centers"], params["notch_depth_db"],
                                   params["notch_width"], params["attenuation_db"],
                                   fast="rayleigh")
    gains = np.stack([profile.realize(trial_rng(seed, 0, t)) for t in range(trials)])
    gamma = gains * n / (params["noise_psd"] * bw)
    weights = baseband_weights(n, bw)
    x_wf = _waterfill_exact(1.0 / gamma, total)
    c_max = np.sum(np.log1p(gamma * x_wf), axis=1) / LN2
    zeta = total * np.max(weights) / c_max
    freqs = (np.arange(n) - (n - 1) / 2.0) * (bw / n)
    rates = np.empty((len(params["alphas"]), trials))
    rms = np.empty_like(rates)
    for i, alpha in enumerate(params["alphas"]):
        if alpha == 0.0:
            x1 = np.zeros((trials, n))
            top = weights == weights.max()
            x1[:, top] = total / np.count_nonzero(top)
        else:
            x1, _, _ = _stage1_batch(gamma, weights, alpha, total, zeta, 1e-12)
        x2, _ = _project_batch(x1, p_bar, v0)
        x2 = np.maximum(x2, 0.0)
        rates[i] = np.sum(np.log1p(gamma * x2), axis=1) / LN2 * (bw / n)
        rms[i] = [rms_bandwidth(x2[t], freqs, center=0.0) for t in range(trials)]
    return np.asarray(params["alphas"], dtype=float), rates, rms


def run_tradeoff_sweep(params, trials, seed, workers=1):
    alphas, rates, rms = _tradeoff_batch(params, trials, seed)
    rows = []
    for i, alpha in enumerate(alphas):
        rows.append((alpha,
                     float(np.mean(rates[i])), float(np.std(rates[i]) / math.sqrt(trials)),
                     float(np.mean(rms[i])), float(np.std(rms[i]) / math.sqrt(trials)),
                     trials))
    cols = ["alpha", "mean_sum_rate_bps", "se_sum_rate_bps",
            "mean_rms_bandwidth_hz", "se_rms_bandwidth_hz", "trials"]
    return [CsvTable("tradeoff_sweep", cols, rows)]


def _solver_compare_batch(params, trials, seed):
    n = params["n_subcarriers"]
    bw = params["bandwidth"]
    p_bar = params["tx_power"] / n
    v0 = params["v0_over_p2"] * p_bar ** 2
    total = n * p_bar
    alpha = params["alpha"]
    profile = make_notched_profile(n, params["notch_centers"], params["notch_depth_db"],
                                   params["notch_width"], params["attenuation_db"],
                                   fast="rayleigh")
    gains = np.stack([profile.realize(trial_rng(seed, 0, t)) for t in range(trials)])
    gamma = gains * n / (params["noise_psd"] * bw)
    weights = baseband_weights(n, bw)
    x_wf = _waterfill_exact(1.0 / gamma, total)
    c_max = np.sum(np.log1p(gamma * x_wf), axis=1) / LN2
    zeta = total * np.max(weights) / c_max

    def objective(x):
        rate = np.sum(np.log1p(gamma * x), axis=1) / LN2
        return alpha * zeta * rate + (1 - alpha) * np.sum(weights[None, :] * x, axis=1)

    x1, _, _ = _stage1_batch(gamma, weights, alpha, total, zeta, 1e-12)
    x2, _ = _project_batch(x1, p_bar, v0)
    obj_two = objective(np.maximum(x2, 0.0))
    _, obj_pg = _pg_batch(gamma, weights, alpha, p_bar, v0, zeta,
                          steps=params["pg_steps"])
    return obj_two, obj_pg


def run_solver_compare(params, trials, seed, workers=1):
    obj_two, obj_pg = _solver_compare_batch(params, trials, seed)
    rows = [(t, float(obj_two[t]), float(obj_pg[t]), float(obj_two[t] / obj_pg[t]))
            for t in range(len(obj_two))]
    return [CsvTable("solver_compare",
                     ["trial", "obj_two_stage", "obj_single_stage", "ratio"], rows)]


def _crb_trial(args):
    seed, tag, trial, n, snr_db, upsample = args
    rng = trial_rng(seed, tag, trial)
    const = get_constellation("qpsk")
    spectrum = const.points[rng.integers(0, 4, n)]
    x = np.fft.ifft(spectrum, norm="ortho")
    sigma2 = 10.0 ** (-snr_db / 10.0)
    tau = 7.0 + rng.uniform(0.0, 1.0)      # fractional-sample delay
    phase = np.exp(-2j * np.pi * np.fft.fftfreq(n) * tau)
    y = np.fft.ifft(np.fft.fft(x) * phase)
    y = y + math.sqrt(sigma2 / 2) * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    nfft = 1 << int(2 * n).bit_length()
    spec = np.fft.fft(y, nfft) * np.conj(np.fft.fft(x, nfft))
    big = np.zeros(nfft * upsample, dtype=np.complex128)
    big[:nfft // 2] = spec[:nfft // 2]
    big[-nfft // 2:] = spec[-nfft // 2:]
    corr = np.abs(np.fft.ifft(big))
    k = int(np.argmax(corr))
    km, kp = (k - 1) % corr.size, (k + 1) % corr.size
    den = corr[km] - 2 * corr[k] + corr[kp]
    delta = 0.0 if den == 0 else 0.5 * (corr[km] - corr[kp]) / den
    lag = (k + delta) / upsample
    if lag > n / 2:
        lag -= nfft / upsample
    return trial, (lag - tau) ** 2          # squared error in samples^2


def run_crb_validate(params, trials, seed, workers=1):
    n = params["n_subcarriers"]
    bw = params["bandwidth"]
    dt = 1.0 / bw
    upsample = params["upsample"]
    rows = []
    for tag, snr_db in enumerate(params["snr_db"]):
        jobs = [(seed, tag, t, n, float(snr_db), upsample) for t in range(trials)]
        results = _map_jobs(_crb_trial, jobs, workers)
        sq = np.array([v for _, v in sorted(results)]) * dt ** 2
        sigma2 = 10.0 ** (-snr_db / 10.0)
        scenario = _baseband_scenario(np.ones(n), bw, sigma2)
        crb = crb_ranging_mse(scenario)
        emp = float(np.mean(sq)) * scenario_c2()
        rows.append((float(snr_db), crb, emp, emp / crb, trials))
    return [CsvTable("crb_validate",
                     ["snr_db", "crb_m2", "empirical_mse_m2", "ratio", "trials"],
                     rows)]


def scenario_c2() -> float:
    from .sensing import SPEED_OF_LIGHT
    return SPEED_OF_LIGHT ** 2


def _baseband_scenario(spectrum_power: np.ndarray, sample_rate: float,
                       noise_var: float, attenuation: float = 1.0) -> RangingScenario:
    """Ranging scenario whose band-integral Fisher information reproduces the
    sampled-likelihood Fisher information (2 A^2 / sigma^2) sum w^2 |X|^2.

    PSD samples are scaled by 2 N / B and laid on the baseband grid; the
    scenario noise PSD is sigma^2 / B so that A^2/(N0 W) carries the rest.
    """
    n = spectrum_power.size
    ordered = np.fft.fftshift(spectrum_power)
    psd = ordered * 2.0 * n / sample_rate
    return RangingScenario(
        attenuation=attenuation,
        carrier=0.0,
        bandwidth=2.0 * np.pi * sample_rate,
        noise_psd=noise_var / sample_rate,
        psd=psd,
    )


def _psl_trial(args):
    seed, tag, trial, n = args
    rng = trial_rng(seed, tag, trial)
    x = rng.choice(np.array([-1.0, 1.0]), n).astype(np.complex128)
    return trial, psl(x)


def run_psl_law(params, trials, seed, workers=1):
    rows = []
    for tag, n in enumerate(params["n_list"]):
        jobs = [(seed, tag, t, int(n)) for t in range(trials)]
        results = _map_jobs(_psl_trial, jobs, workers)
        vals = np.array([v for _, v in sorted(results)])
        law = math.sqrt(2.0 * math.log(n) / n)
        ratios = vals / law
        rows.append((int(n), float(np.mean(vals)), law, float(np.mean(ratios)),
                     float(np.mean((ratios >= 0.7) & (ratios <= 1.3))), trials))
    return [CsvTable("psl_law",
                     ["n", "mean_norm_psl", "law_value", "mean_ratio",
                      "frac_in_band", "trials"], rows)]


def run_imaging_convergence(params, trials, seed, workers=1):
    spans = list(range(params["span_start"], params["span_stop"] + 1,
                       params["span_step"]))
    rows = imaging_convergence(spans, params["k_source"], params["n_meas"],
                               params["k1"], params["delta_l"], params["delta_k"])
    out = [(r["span"], r["snr"], (r["rel_diff"] if math.isfinite(r["rel_diff"]) else -1.0))
           for r in rows]
    return [CsvTable("imaging_convergence", ["span", "snr", "rel_diff"], out)]


def _map_jobs(fn, jobs, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [fn(job) for job in jobs]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

REGISTRY: dict[str, Experiment] = {}


def _register(name, description, defaults, runner, default_trials):
    REGISTRY[name] = Experiment(name, description,
                                {**defaults, "trials": default_trials}, runner)


_register(
    "isl-cdf",
    "CDF samples of normalized aperiodic ISL for flat-allocation OFDM symbols "
    "across constellation orders (QPSK lowest, 64QAM highest).",
    {"n_subcarriers": 1024, "constellations": ["qpsk", "16qam", "64qam"]},
    run_isl_cdf, 1000)
_register(
    "isl-gap",
    "Relative agreement between aperiodic and circular ISL of random symbol "
    "sequences versus sequence length; justifies the PSD-variance surrogate.",
    {"n_list": [64, 128, 256, 512, 1024, 2048], "constellation": "qpsk"},
    run_isl_gap, 200)
_register(
    "otfs-pilot-cdf",
    "Delay-window ISL CDFs of OTFS frames as embedded pilots multiply along "
    "the delay axis (ISL grows) versus the Doppler axis (ISL unchanged).",
    {"m_tau": 80, "n_nu": 80, "subcarrier_spacing": 2.5e6,
     "pilot_counts": [1, 10, 20, 40], "axes": ["delay", "doppler"],
     "e_s": 1.0, "e_p": 0.15},
    run_otfs_pilot_cdf, 500)
_register(
    "se-vs-distance",
    "Gaussian versus QPSK spectral efficiency over distance for two "
    "bandwidths under the reference link budget.",
    {**LINK_BUDGET_PRESET, "bandwidths": [500e6, 4e9],
     "d_min": 50.0, "d_max": 350.0, "n_distances": 31},
    run_se_vs_distance, 1)
_register(
    "gap-region",
    "Minimum bandwidth at which the QPSK-to-Gaussian efficiency gap falls "
    "within a tolerance, over a power/distance grid.",
    {**LINK_BUDGET_PRESET, "bandwidths": [100e6],
     "p_min": 0.01, "p_max": 0.2, "n_powers": 8,
     "d_min": 50.0, "d_max": 350.0, "n_distances": 7,
     "w_min": 100e6, "w_max": 4e9, "n_bandwidths": 12,
     "tolerances": [0.01, 0.001, 0.0001]},
    run_gap_region, 1)
_register(
    "allocation-demo",
    "Per-subcarrier stage-1 and final power allocations on the notched "
    "fading profile for several trade-off weights.",
    {**ALLOCATION_PRESET, "alphas": [1.0, 0.5, 0.0], "fast_fading": "none"},
    run_allocation_demo, 1)
_register(
    "tradeoff-sweep",
    "Mean sum rate and RMS bandwidth of the two-stage allocation as the "
    "trade-off weight sweeps from pure sensing to pure communication.",
    # variance budget (total power)^2: loose enough that the sweep traces the
    # scalarized Pareto frontier, which is monotone in the weight by
    # construction; the tight per-subcarrier budget of the allocation demo
    # pins every output to a thin sphere whose metrics are direction-driven
    # and not monotone
    {**ALLOCATION_PRESET, "v0_over_p2": float(1024 ** 2),
     "alphas": [i / 10 for i in range(11)]},
    run_tradeoff_sweep, 100)
_register(
    "solver-compare",
    "Objective of the two-stage allocator against a projected-gradient "
    "single-stage reference over random fast-fading draws.",
    {**ALLOCATION_PRESET, "alpha": 0.5, "pg_steps": 150},
    run_solver_compare, 1000)
_register(
    "crb-validate",
    "Matched-filter delay-estimation MSE against the ranging CRB across SNR.",
    {"n_subcarriers": 512, "bandwidth": 1e9, "snr_db": [20.0, 25.0, 30.0],
     "upsample": 8},
    run_crb_validate, 1000)
_register(
    "psl-law",
    "Normalized peak sidelobe of random binary sequences against the "
    "sqrt(2 ln N / N) law.",
    {"n_list": [1024, 4096, 16384]},
    run_psl_law, 500)
_register(
    "imaging-convergence",
    "Band-averaged imaging SNR factor versus averaging span, demonstrating "
    "convergence to a bounded value.",
    {"k_source": 4, "n_meas": 4, "k1": 16, "delta_l": 1.0,
     "delta_k": math.pi / 2, "span_start": 2, "span_stop": 64, "span_step": 2},
    run_imaging_convergence, 1)

assert len(REGISTRY) == 11


def run_experiment(name: str, overrides: dict | None = None, seed: int = 0,
                   trials: int | None = None, output_dir: str = ".",
                   workers: int = 1) -> dict:
    """Run one experiment, write its CSVs and manifest, return the manifest."""
    if name not in REGISTRY:
        raise KeyError(f"unknown experiment {name!r}")
    exp = REGISTRY[name]
    params = dict(exp.defaults)
    overrides = dict(overrides or {})
    unknown = set(overrides) - set(params)
    if unknown:
        raise ValueError(f"unknown parameters for {name}: {sorted(unknown)}")
    params.update(overrides)
    n_trials = int(trials if trials is not None else params.pop("trials"))
    params.pop("trials", None)
    if n_trials < 1:
        raise ValueError("trials must be >= 1")
    os.makedirs(output_dir, exist_ok=True)
    tables = exp.runner(params, n_trials, seed, workers)
    meta = {"experiment": name, "version": f"isacbench {__version__}",
            "seed": seed, "trials": n_trials}
    for key in sorted(params):
        meta[key] = params[key]
    outputs = []
    for table in tables:
        path = os.path.join(output_dir, f"{table.name}.csv")
        write_csv(path, table, meta)
        outputs.append(os.path.basename(path))
    manifest = {
        "experiment": name,
        "version": f"isacbench {__version__}",
        "seed": seed,
        "trials": n_trials,
        "params": {k: (list(v) if isinstance(v, (tuple, np.ndarray)) else v)
                   for k, v in params.items()},
        "outputs": outputs,
    }
    mpath = os.path.join(output_dir, f"{name.replace('-', '_')}_manifest.json")
    with open(mpath, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest
