"""Monte-Carlo efficiency curves and sliced-stability diagnostics.

An efficiency curve sweeps the rescaled sample size
gamma = n / (s * log(p - s)) over a grid, runs seeded replicates of a
recovery method at each point, and records the exact signed-support
recovery rate.  The stability diagnostic estimates how fast the
per-slice conditional variances of the inverse regression curve decay
as the number of slices grows.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dt import SignedSupport, dt_sir, signed_support_match
from .errors import InvalidArgumentError, NumericalError
from .models import BETA_SCHEMES, ModelSpec, generate_beta, sample_sim
from .sdp import SdpConfig, default_lambda, sdp_sign_recover, sdp_solve
from .sir import sir_matrix, sir_matrix_whitened, slice_data

__all__ = [
    "METHODS",
    "SPARSITY_RULES",
    "CurveConfig",
    "CurvePoint",
    "EfficiencyCurve",
    "StabilityDiagnostic",
    "gamma_to_n",
    "run_curve",
    "stability_diagnostic",
    "fit_decay_exponent",
]

METHODS = ("dt_sir", "sdp")
SPARSITY_RULES = ("sqrt_p", "log_p")

# each outer slice is subdivided this many times when estimating the
# inverse regression curve for the stability diagnostic
INNER_RESOLUTION = 50


def _resolve_sparsity(p: int, sparsity) -> int:
    if isinstance(sparsity, str):
        if sparsity == "sqrt_p":
            return int(round(math.sqrt(p)))
        if sparsity == "log_p":
            return int(round(math.log(p)))
        raise InvalidArgumentError(
            f"sparsity must be an integer or one of {SPARSITY_RULES}, got {sparsity!r}"
        )
    if isinstance(sparsity, (int, np.integer)):
        return int(sparsity)
    raise InvalidArgumentError(f"sparsity must be an integer or one of {SPARSITY_RULES}")


@dataclass(frozen=True)
class CurveConfig:
    """Settings for one efficiency curve.

    ``sparsity`` is either an explicit integer or one of the rules
    "sqrt_p" (s = round(sqrt(p))) and "log_p" (s = round(log p)).
    ``sdp_lambda`` of None means the penalty is recomputed per replicate
    from the estimated matrix via ``default_lambda``.
    """

    model: ModelSpec
    p: int
    sparsity: int | str
    gamma_grid: tuple[float, ...]
    method: str = "dt_sir"
    beta_scheme: str = "fixed"
    h: int = 10
    reps: int = 500
    master_seed: int = 0
    estimator_mode: str = "centered"
    sdp_lambda: float | None = None

    def __post_init__(self):
        if not isinstance(self.model, ModelSpec):
            raise InvalidArgumentError("model must be a ModelSpec")
        if not (isinstance(self.p, (int, np.integer)) and self.p >= 3):
            raise InvalidArgumentError(f"p must be an integer >= 3, got {self.p}")
        s = _resolve_sparsity(self.p, self.sparsity)
        if not (1 <= s <= self.p - 2):
            raise InvalidArgumentError(
                f"resolved sparsity s={s} must satisfy 1 <= s <= p - 2 (p={self.p})"
            )
        grid = tuple(float(g) for g in self.gamma_grid)
        if len(grid) == 0:
            raise InvalidArgumentError("gamma_grid must be nonempty")
        if any(g < 0 for g in grid):
            raise InvalidArgumentError("gamma values must be nonnegative")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvalidArgumentError("gamma_grid must be strictly increasing")
        if self.method not in METHODS:
            raise InvalidArgumentError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.beta_scheme not in BETA_SCHEMES:
            raise InvalidArgumentError(f"beta_scheme must be one of {BETA_SCHEMES}")
        if not (isinstance(self.h, (int, np.integer)) and self.h >= 2):
            raise InvalidArgumentError(f"h must be an integer >= 2, got {self.h}")
        if not (isinstance(self.reps, (int, np.integer)) and self.reps >= 1):
            raise InvalidArgumentError(f"reps must be a positive integer, got {self.reps}")
        if self.estimator_mode not in ("raw", "centered", "whitened"):
            raise InvalidArgumentError(f"unknown estimator_mode {self.estimator_mode!r}")
        if self.sdp_lambda is not None and not (self.sdp_lambda >= 0):
            raise InvalidArgumentError("sdp_lambda must be nonnegative or None")
        object.__setattr__(self, "gamma_grid", grid)

    @property
    def s(self) -> int:
        return _resolve_sparsity(self.p, self.sparsity)


@dataclass(frozen=True)
class CurvePoint:
    """One grid point of an efficiency curve.

    Points with n < 2h are skipped: no replicates run, ``successes`` and
    ``success_rate`` are None and ``skipped`` is True.
    """

    gamma: float
    n: int
    successes: int | None
    reps: int
    success_rate: float | None
    skipped: bool


@dataclass(frozen=True)
class EfficiencyCurve:
    config: CurveConfig
    points: tuple[CurvePoint, ...]
    wall_times: tuple[float, ...] = field(default=())


def gamma_to_n(gamma: float, s: int, p: int) -> int:
    """Sample size n = ceil(gamma * s * log(p - s)), natural log."""
    if p - s < 1:
        raise InvalidArgumentError(f"need p > s, got p={p}, s={s}")
    return int(math.ceil(gamma * s * math.log(p - s)))


def _replicate_seeds(master_seed: int, point_index: int, rep: int) -> tuple[int, int, int]:
    """Splittable per-replicate seeds: SeedSequence(master, spawn_key=(point, rep))."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(point_index), int(rep)))
    state = ss.generate_state(3, dtype=np.uint64)
    return int(state[0]), int(state[1]), int(state[2])


def _run_replicate(task: tuple[CurveConfig, int, int, int]) -> bool:
    """One seeded replicate; True on exact signed-support recovery.

    Module-level so process pools can pickle it.  A custom-link model is
    only usable with workers > 1 if its callable is picklable.
    """
    cfg, point_index, rep, n = task
    beta_seed, data_seed, slice_seed = _replicate_seeds(cfg.master_seed, point_index, rep)
    s = cfg.s
    beta = generate_beta(cfg.p, s, cfg.beta_scheme, beta_seed)
    data = sample_sim(cfg.model, beta, n, data_seed)
    if cfg.estimator_mode == "whitened":
        v = sir_matrix_whitened(data, cfg.h, slice_seed)
    else:
        v = sir_matrix(slice_data(data, cfg.h, slice_seed), cfg.estimator_mode)
    truth = SignedSupport(beta.signs())
    if cfg.method == "dt_sir":
        estimate = dt_sir(v, s)
        return signed_support_match(estimate, truth)
    lam = cfg.sdp_lambda if cfg.sdp_lambda is not None else default_lambda(v, s)
    sol = sdp_solve(v, SdpConfig(lam=lam))
    if not sol.converged:
        return False
    return signed_support_match(sdp_sign_recover(sol, s), truth)


def run_curve(cfg: CurveConfig, workers: int = 1) -> EfficiencyCurve:
    """Run every replicate of every nonskipped grid point.

    Replicates are seeded independently from (master_seed, point index,
    replicate index), so results do not depend on execution order and
    are bitwise identical for any worker count.
    """
    if not (isinstance(workers, (int, np.integer)) and workers >= 1):
        raise InvalidArgumentError(f"workers must be a positive integer, got {workers}")
    points: list[CurvePoint] = []
    walls: list[float] = []
    for gi, gamma in enumerate(cfg.gamma_grid):
        n = gamma_to_n(gamma, cfg.s, cfg.p)
        start = time.perf_counter()
        if n < 2 * cfg.h:
            points.append(
                CurvePoint(gamma=gamma, n=n, successes=None, reps=cfg.reps,
                           success_rate=None, skipped=True)
            )
            walls.append(time.perf_counter() - start)
            continue
        tasks = [(cfg, gi, r, n) for r in range(cfg.reps)]
        if workers == 1:
            outcomes = [_run_replicate(t) for t in tasks]
        else:
            with ProcessPoolExecutor(max_workers=int(workers)) as pool:
                chunk = max(1, len(tasks) // (int(workers) * 4))
                outcomes = list(pool.map(_run_replicate, tasks, chunksize=chunk))
        successes = int(sum(outcomes))
        points.append(
            CurvePoint(gamma=gamma, n=n, successes=successes, reps=cfg.reps,
                       success_rate=successes / cfg.reps, skipped=False)
        )
        walls.append(time.perf_counter() - start)
    return EfficiencyCurve(config=cfg, points=tuple(points), wall_times=tuple(walls))


@dataclass(frozen=True)
class StabilityDiagnostic:
    """Per-slice conditional variances of the inverse regression curve.

    For each H in ``h_grid``: ``per_slice_variances`` holds the H
    estimated variances Var[m(Y) | slice], ``boundaries`` the H + 1
    response values cutting the slices, ``sums`` their total, and
    ``mean_decay`` = sums / H.  A decaying mean_decay over growing H is
    what makes slicing informative at all.
    """

    h_grid: tuple[int, ...]
    per_slice_variances: tuple[np.ndarray, ...]
    boundaries: tuple[np.ndarray, ...]
    sums: np.ndarray
    mean_decay: np.ndarray


def stability_diagnostic(
    model: ModelSpec,
    h_grid: tuple[int, ...],
    mc_n: int = 200_000,
    seed: int = 0,
) -> StabilityDiagnostic:
    """Estimate the per-slice conditional variances of m(Y) = E[Z | Y].

    Draws mc_n scalar pairs (Z, Y) once.  For each H the sample is cut
    into H * INNER_RESOLUTION fine slices whose means estimate m(Y); the
    variance of those means within each group of INNER_RESOLUTION
    estimates Var[m(Y) | slice].

    Requires every H >= 2 and mc_n >= 1000 * max(h_grid).
    """
    h_grid = tuple(int(h) for h in h_grid)
    if len(h_grid) == 0:
        raise InvalidArgumentError("h_grid must be nonempty")
    if any(h < 2 for h in h_grid):
        raise InvalidArgumentError(f"every H must be >= 2, got {h_grid}")
    if mc_n < 1000 * max(h_grid):
        raise InvalidArgumentError(
            f"mc_n={mc_n} is too small: need mc_n >= 1000 * max(h_grid) = {1000 * max(h_grid)}"
        )
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(int(mc_n))
    eps = model.noise_sd * rng.standard_normal(int(mc_n))
    y = model.response(z, eps)
    variances = []
    boundaries = []
    for h in h_grid:
        inner = h * INNER_RESOLUTION
        m = z.size // inner
        keep = m * inner
        order = np.argsort(y[:keep], kind="stable")
        zs = z[:keep][order]
        ys = y[:keep][order]
        inner_means = zs.reshape(inner, m).mean(axis=1)
        grouped = inner_means.reshape(h, INNER_RESOLUTION)
        variances.append(grouped.var(axis=1))
        edges = np.empty(h + 1)
        edges[0] = ys[0]
        edges[1:h] = ys[np.arange(1, h) * (m * INNER_RESOLUTION)]
        edges[h] = ys[-1]
        boundaries.append(edges)
    sums = np.array([v.sum() for v in variances])
    return StabilityDiagnostic(
        h_grid=h_grid,
        per_slice_variances=tuple(variances),
        boundaries=tuple(boundaries),
        sums=sums,
        mean_decay=sums / np.array(h_grid, dtype=float),
    )


def fit_decay_exponent(diag: StabilityDiagnostic) -> float:
    """Least-squares slope kappa of log(sums) against log(H).

    The summed per-slice variances of a usable model grow strictly
    slower than H, i.e. kappa < 1.
    """
    if len(diag.h_grid) < 2:
        raise InvalidArgumentError("need at least two H values to fit a decay exponent")
    if np.any(diag.sums <= 0):
        raise NumericalError("summed per-slice variances must be positive to fit a decay")
    slope, _ = np.polyfit(np.log(np.array(diag.h_grid, dtype=float)), np.log(diag.sums), 1)
    return float(slope)
