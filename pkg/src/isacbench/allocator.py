"""Variance-constrained two-stage water-filling, classical water-filling, a
projected-gradient reference solver, and a tiny-instance exhaustive oracle.

Problem: maximize  alpha * zeta * C(X) + (1 - alpha) * sum_n w2_n X_n
subject to sum X_n = N P,  sum (X_n - P)^2 <= V0,  X_n >= 0, where
C(X) = sum_n log2(1 + gamma_n X_n), gamma_n = |h_n|^2 N / (N0 B), and
zeta = S_max / C_max puts the two objectives on a common scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .ofdm import PowerAllocation

LN2 = math.log(2.0)


@dataclass(frozen=True)
class AllocProblem:
    gains: np.ndarray        # |h_n|^2, > 0
    weights: np.ndarray      # w_n^2 in (rad/s)^2, >= 0
    alpha: float             # 1 = pure rate, 0 = pure sensing
    mean_power: float        # P, watts per subcarrier
    variance_budget: float   # V0, watts^2
    noise_psd: float         # N0, W/Hz
    bandwidth: float         # B, hertz

    def __post_init__(self):
        g = np.asarray(self.gains, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        if g.ndim != 1 or w.shape != g.shape:
            raise ValueError("gains and weights must be matching 1-D vectors")
        if np.min(g) <= 0:
            raise ValueError("gains must be positive")
        if np.min(w) < 0:
            raise ValueError("weights must be nonnegative")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.variance_budget < 0 or self.mean_power <= 0:
            raise ValueError("invalid power/variance budget")
        object.__setattr__(self, "gains", g)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.gains.size

    @property
    def total_power(self) -> float:
        return self.n * self.mean_power

    @property
    def gamma(self) -> np.ndarray:
        return self.gains * self.n / (self.noise_psd * self.bandwidth)


@dataclass(frozen=True)
class AllocSolution:
    x: PowerAllocation
    objective: float
    stage1_x: PowerAllocation
    projected: bool
    lam: float
    iterations: int


def baseband_weights(n: int, bandwidth: float) -> np.ndarray:
    """w_n^2 = (2 pi (f_n - f_c))^2 with subcarrier frequencies referenced to
    the band center, so both spectral edges carry the largest weight."""
    f = (np.arange(n) - (n - 1) / 2.0) * (bandwidth / n)
    return (2.0 * np.pi * f) ** 2


def absolute_weights(n: int, bandwidth: float, carrier_hz: float) -> np.ndarray:
    """Absolute-frequency variant of the ranging weights."""
    f = carrier_hz + (np.arange(n) - (n - 1) / 2.0) * (bandwidth / n)
    return (2.0 * np.pi * f) ** 2


def _waterfill_exact(inv_gamma: np.ndarray, total: float) -> np.ndarray:
    """Exact water level by sorting: X = [mu - 1/gamma]_+ with sum X = total.

    inv_gamma has shape (..., N); vectorized over leading axes.
    """
    s = np.sort(inv_gamma, axis=-1)
    csum = np.cumsum(s, axis=-1)
    k = np.arange(1, s.shape[-1] + 1)
    mu = (total + csum) / k
    ok = mu > s
    kstar = s.shape[-1] - 1 - np.argmax(ok[..., ::-1], axis=-1)
    mu_star = np.take_along_axis(mu, kstar[..., None], axis=-1)
    return np.maximum(mu_star - inv_gamma, 0.0)


def classical_waterfill(gains, noise_psd: float, bandwidth: float,
                        mean_power: float, eps: float = 1e-9) -> PowerAllocation:
    """Rate-optimal allocation X_n = [mu - 1/gamma_n]_+ (exact water level).

    Verifies the KKT residual: every active subcarrier's X_n + 1/gamma_n
    equals the water level within eps (relative).
    """
    g = np.asarray(gains, dtype=np.float64)
    n = g.size
    inv_gamma = noise_psd * bandwidth / (g * n)
    x = _waterfill_exact(inv_gamma, n * mean_power)
    active = x > 0
    levels = x[active] + inv_gamma[active]
    if np.ptp(levels) > eps * np.max(levels):
        raise RuntimeError("water level KKT residual exceeded tolerance")
    return PowerAllocation(x)


def compute_zeta(p: AllocProblem) -> float:
    """S_max / C_max: all-power-on-best-weight sensing metric over the
    classical water-filling capacity."""
    s_max = p.total_power * float(np.max(p.weights))
    if s_max == 0:
        return 1.0
    x_wf = classical_waterfill(p.gains, p.noise_psd, p.bandwidth, p.mean_power)
    c_max = float(np.sum(np.log1p(p.gamma * x_wf.x)) / LN2)
    return s_max / c_max


def objective_value(p: AllocProblem, x, zeta: float | None = None) -> float:
    if zeta is None:
        zeta = compute_zeta(p)
    x = np.asarray(x, dtype=np.float64)
    rate = float(np.sum(np.log1p(p.gamma * x)) / LN2)
    return p.alpha * zeta * rate + (1.0 - p.alpha) * float(np.sum(p.weights * x))


def _stage1_batch(gamma: np.ndarray, weights: np.ndarray, alpha: float,
                  total: float, zeta: np.ndarray, eps: float,
                  max_iter: int = 1200):
    """Bisection on the water-filling multiplier for a (T, N) batch.

    X_n(lam) = [alpha zeta / ((lam - (1-alpha) w2_n) ln2) - 1/gamma_n]_+ with
    lam above the floor (1-alpha) max w2, where the allocated total decreases
    monotonically from +inf to 0.  The search runs on the offset
    t = lam - floor, which stays representable even when the solution sits
    within denormal distance of the floor (tiny alpha).
    """
    t_batch, n = gamma.shape
    # (1-alpha)(max w2 - w2_n): exact, no cancellation against the floor
    gap = (1.0 - alpha) * (np.max(weights) - weights)[None, :]
    floor = (1.0 - alpha) * np.max(weights)
    num = alpha * zeta[:, None]

    def alloc(t):
        den = (t + gap) * LN2
        with np.errstate(divide="ignore"):
            x = num / den - 1.0 / gamma
        return np.maximum(x, 0.0)

    lo = np.zeros((t_batch, 1))
    hi = np.maximum(num, 1.0) * n / (LN2 * total)
    for _ in range(200):
        over = alloc(hi).sum(axis=1, keepdims=True) > total
        if not over.any():
            break
        hi = 2.0 * hi
    else:
        raise RuntimeError("could not bracket the water-filling multiplier")
    for iters in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        x = alloc(mid)
        tot = x.sum(axis=1, keepdims=True)
        if np.all(np.abs(tot - total) <= eps * total):
            return x, floor + mid[:, 0], iters
        above = tot > total
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    raise RuntimeError("water-filling bisection did not converge")


def stage1_waterfill(p: AllocProblem, eps: float = 1e-12):
    """Unconstrained-variance trade-off allocation.

    Returns (PowerAllocation, lam, bisection iterations).  alpha = 0 is the
    linear-objective corner: all power on the largest weight (ties split
    equally), no bisection.
    """
    if p.alpha == 0.0:
        x = np.zeros(p.n)
        top = p.weights == np.max(p.weights)
        x[top] = p.total_power / np.count_nonzero(top)
        return PowerAllocation(x), math.nan, 0
    zeta = compute_zeta(p)
    x, lam, iters = _stage1_batch(p.gamma[None, :], p.weights, p.alpha,
                                  p.total_power, np.array([zeta]), eps)
    return PowerAllocation(x[0]), float(lam[0]), iters


def _dykstra_batch(x0: np.ndarray, mean_power: float, v0: float, total: float,
                   sweeps: int = 200, tol: float = 1e-10) -> np.ndarray:
    """Dykstra projection onto {sum = total} ∩ {var <= v0} ∩ {x >= 0}."""
    n = x0.shape[-1]
    z = x0.copy()
    p1 = np.zeros_like(z)
    p2 = np.zeros_like(z)
    p3 = np.zeros_like(z)
    for _ in range(sweeps):
        y = z + p1
        z = y + (total - y.sum(axis=-1, keepdims=True)) / n
        p1 = y - z
        y = z + p2
        d = y - mean_power
        var = np.sum(d * d, axis=-1, keepdims=True)
        scale = np.where(var > v0, np.sqrt(v0 / np.maximum(var, 1e-300)), 1.0)
        z = mean_power + d * scale
        p2 = y - z
        y = z + p3
        z = np.maximum(y, 0.0)
        p3 = y - z
        ok = (np.abs(z.sum(axis=-1) - total) <= tol * total) \
            & (np.sum((z - mean_power) ** 2, axis=-1) <= v0 * (1 + 1e-9)) \
            & (z.min(axis=-1) >= -tol)
        if ok.all():
            break
    return z


def _project_batch(x: np.ndarray, mean_power: float, v0: float) -> tuple[np.ndarray, np.ndarray]:
    """Radial shrink onto the variance ball within the power hyperplane;
    Dykstra fallback for rows the shrink pushes negative."""
    n = x.shape[-1]
    total = n * mean_power
    d = x - mean_power
    var = np.sum(d * d, axis=-1, keepdims=True)
    needs = var[..., 0] > v0 * (1.0 + 1e-12)
    if not needs.any():
        return x.copy(), needs
    out = x.copy()
    shrunk = mean_power + d * np.sqrt(v0 / np.maximum(var, 1e-300))
    rows = np.where(needs)[0] if x.ndim == 2 else None
    if x.ndim == 1:
        if needs:
            out = shrunk if shrunk.min() >= 0 else _dykstra_batch(x[None, :], mean_power, v0, total)[0]
        return out, needs
    out[rows] = shrunk[rows]
    bad = rows[out[rows].min(axis=-1) < 0]
    if bad.size:
        out[bad] = _dykstra_batch(x[bad], mean_power, v0, total)
    return out, needs


def stage2_project(x, mean_power: float, variance_budget: float):
    """Project onto the variance ball: unchanged when already feasible, else
    X_final = P + sqrt(V0 / sum (X-P)^2) (X - P), with Dykstra-style
    alternating projection when the shrink leaves the nonnegative orthant.

    Returns (PowerAllocation, projected flag); idempotent.
    """
    arr = x.x if isinstance(x, PowerAllocation) else np.asarray(x, dtype=np.float64)
    out, projected = _project_batch(arr, mean_power, variance_budget)
    return PowerAllocation(np.maximum(out, 0.0)), bool(projected)


def two_stage(p: AllocProblem, eps: float = 1e-12) -> AllocSolution:
    """Stage-1 water-filling followed by the variance-ball projection."""
    stage1, lam, iters = stage1_waterfill(p, eps)
    final, projected = stage2_project(stage1, p.mean_power, p.variance_budget)
    zeta = compute_zeta(p)
    return AllocSolution(
        x=final,
        objective=objective_value(p, final.x, zeta),
        stage1_x=stage1,
        projected=projected,
        lam=lam,
        iterations=iters,
    )


def _pg_batch(gamma: np.ndarray, weights: np.ndarray, alpha: float,
              mean_power: float, v0: float, zeta: np.ndarray,
              steps: int = 150, step_size: float | None = None):
    """Projected gradient ascent from the flat point, batch over rows;
    returns the best feasible iterate and its objective."""
    t_batch, n = gamma.shape
    total = n * mean_power
    w_row = weights[None, :]

    def objective(x):
        rate = np.sum(np.log1p(gamma * x), axis=1) / LN2
        return alpha * zeta * rate + (1.0 - alpha) * np.sum(w_row * x, axis=1)

    x = np.full((t_batch, n), mean_power)
    best = x.copy()
    best_f = objective(x)
    base_step = math.sqrt(v0) * 2.0 if step_size is None else step_size
    for i in range(steps):
        grad = alpha * zeta[:, None] * gamma / ((1.0 + gamma * x) * LN2) \
            + (1.0 - alpha) * w_row
        norm = np.linalg.norm(grad, axis=1, keepdims=True)
        step = base_step / (1.0 + i) ** 0.7
        x = _dykstra_batch(x + step * grad / np.maximum(norm, 1e-300),
                           mean_power, v0, total, sweeps=25)
        f = objective(x)
        better = f > best_f
        best[better] = x[better]
        best_f = np.maximum(best_f, f)
    return best, best_f


def single_stage_pg(p: AllocProblem, steps: int = 150,
                    step_size: float | None = None) -> AllocSolution:
    """Reference single-stage solver: projected gradient over the full
    feasible set; every iterate is feasible, the best one is returned."""
    zeta = compute_zeta(p)
    best, best_f = _pg_batch(p.gamma[None, :], p.weights, p.alpha, p.mean_power,
                             p.variance_budget, np.array([zeta]), steps, step_size)
    return AllocSolution(
        x=PowerAllocation(best[0]),
        objective=float(best_f[0]),
        stage1_x=PowerAllocation(best[0]),
        projected=True,
        lam=math.nan,
        iterations=steps,
    )


def exhaustive_oracle(p: AllocProblem, levels: int) -> AllocSolution:
    """Best feasible allocation on the quantized simplex X_n = k_n * delta,
    sum k_n = levels - 1, delta = N P / (levels - 1).  Test-scale only."""
    if p.n > 8 or levels > 16:
        raise ValueError("oracle limited to n <= 8, levels <= 16")
    if levels < 2:
        raise ValueError("need at least 2 levels")
    zeta = compute_zeta(p)
    delta = p.total_power / (levels - 1)
    units = levels - 1
    best_x = None
    best_f = -math.inf
    # stars and bars over the quantized simplex
    for bars in combinations(range(units + p.n - 1), p.n - 1):
        k = np.diff((-1, *bars, units + p.n - 1)) - 1
        x = k * delta
        if np.sum((x - p.mean_power) ** 2) > p.variance_budget * (1 + 1e-12):
            continue
        f = objective_value(p, x, zeta)
        if f > best_f:
            best_f, best_x = f, x
    if best_x is None:
        raise RuntimeError("no feasible quantized allocation (variance budget too tight)")
    alloc = PowerAllocation(best_x)
    return AllocSolution(alloc, best_f, alloc, False, math.nan, 0)
