"""Slice-mean moment matrices.

Sorting a sample by its response and averaging the design within
equal-size slices turns the inverse regression curve E[X | Y] into a
small set of slice means; their average outer product concentrates on
the direction the response actually depends on.  This module computes
that matrix in three estimator modes:

- ``raw``: average outer product of the slice means,
- ``centered``: same after subtracting the grand mean of the slice means,
- ``whitened``: the centered matrix conjugated by the inverse square
  root of the sample covariance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidArgumentError,
    NotPositiveDefiniteError,
    NumericalError,
    RankDeficientError,
)
from .models import Dataset

__all__ = [
    "MODES",
    "SlicedSample",
    "SirMatrix",
    "slice_data",
    "sir_matrix",
    "inv_sqrt_sym",
    "sir_matrix_whitened",
    "as_matrix",
]

MODES = ("raw", "centered", "whitened")


def as_matrix(v) -> np.ndarray:
    """Unwrap a SirMatrix, or validate a plain square array."""
    if isinstance(v, SirMatrix):
        return v.v
    m = np.asarray(v, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError("expected a SirMatrix or a square array")
    return m


def _mirror_upper(m: np.ndarray) -> np.ndarray:
    """Exactly symmetric copy: mirror the upper triangle onto the lower."""
    upper = np.triu(m)
    return upper + np.triu(m, 1).T


def _eigh(m: np.ndarray):
    try:
        return np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK breakdown
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc


@dataclass(frozen=True)
class SlicedSample:
    """A dataset sorted by response and cut into h slices of m rows each.

    ``order`` holds the original row indices actually used, in sorted
    order, so row k of slice h is ``x[order[h * m + k]]``.  ``dropped``
    counts the rows discarded (uniformly at random) to make n divisible
    by h.
    """

    h: int
    m: int
    slice_means: np.ndarray
    dropped: int
    order: np.ndarray


@dataclass(frozen=True)
class SirMatrix:
    """A symmetric p x p slice-mean moment matrix."""

    v: np.ndarray
    mode: str
    h: int

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise InvalidArgumentError("v must be a square matrix")
        if not np.array_equal(v, v.T):
            raise InvalidArgumentError("v must be exactly symmetric")
        if self.mode not in MODES:
            raise InvalidArgumentError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "v", v)

    @property
    def p(self) -> int:
        return int(self.v.shape[0])


def slice_data(data: Dataset, h: int, seed: int = 0) -> SlicedSample:
    """Sort rows by y (stably, ties by original index) and cut into h slices.

    With m = floor(n / h), the n - h*m surplus rows are discarded at
    positions chosen uniformly at random from the sorted sequence using
    ``seed``, and the remaining rows are cut into h consecutive slices
    of m rows each.

    Requires h >= 2 and n >= 2h.
    """
    if not (isinstance(h, (int, np.integer)) and h >= 2):
        raise InvalidArgumentError(f"h must be an integer >= 2, got {h}")
    n = data.n
    if n < 2 * h:
        raise InvalidArgumentError(f"need n >= 2h to slice, got n={n}, h={h}")
    order = np.argsort(data.y, kind="stable")
    m = n // h
    dropped = n - h * m
    if dropped:
        rng = np.random.default_rng(seed)
        drop_pos = rng.choice(n, size=dropped, replace=False)
        keep = np.ones(n, dtype=bool)
        keep[drop_pos] = False
        order = order[keep]
    means = data.x[order].reshape(h, m, data.p).mean(axis=1)
    return SlicedSample(h=int(h), m=int(m), slice_means=means, dropped=int(dropped), order=order)


def sir_matrix(sliced: SlicedSample, mode: str = "centered") -> SirMatrix:
    """Average outer product of the slice means, optionally centered.

    ``raw`` returns (1/h) * sum_h mean_h mean_h'; ``centered`` subtracts
    the grand mean of the slice means first.  The result is mirrored to
    be exactly symmetric and is positive semidefinite by construction.
    """
    if mode not in ("raw", "centered"):
        raise InvalidArgumentError(
            f"mode must be 'raw' or 'centered' here, got {mode!r}; "
            "use sir_matrix_whitened for the whitened estimator"
        )
    means = sliced.slice_means
    if mode == "centered":
        means = means - means.mean(axis=0)
    v = _mirror_upper(means.T @ means / sliced.h)
    return SirMatrix(v=v, mode=mode, h=sliced.h)


def inv_sqrt_sym(sigma: np.ndarray, eig_floor: float | None = None) -> np.ndarray:
    """Inverse symmetric square root Q diag(w^-1/2) Q' of a positive definite matrix.

    ``eig_floor`` defaults to 1e-10 times the largest eigenvalue; any
    eigenvalue below the floor raises ``NotPositiveDefiniteError`` naming
    the offending eigenvalue.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise InvalidArgumentError("sigma must be a square matrix")
    scale = max(1.0, float(np.abs(sigma).max()))
    if float(np.abs(sigma - sigma.T).max()) > 1e-10 * scale:
        raise InvalidArgumentError("sigma must be symmetric")
    if eig_floor is not None and not (eig_floor > 0):
        raise InvalidArgumentError(f"eig_floor must be positive, got {eig_floor}")
    w, q = _eigh(_mirror_upper(sigma))
    floor = float(eig_floor) if eig_floor is not None else 1e-10 * float(w[-1])
    if w[0] < floor or floor <= 0:
        raise NotPositiveDefiniteError(eigenvalue=float(w[0]), floor=floor)
    return _mirror_upper((q * w**-0.5) @ q.T)


def sir_matrix_whitened(
    data: Dataset,
    h: int,
    seed: int = 0,
    eig_floor: float | None = None,
) -> SirMatrix:
    """Centered slice-mean matrix conjugated by the inverse root of the sample covariance.

    The covariance is the maximum-likelihood estimate (1/n) sum_i
    (x_i - xbar)(x_i - xbar)'.  Requires n > p; otherwise the covariance
    is singular and a ``RankDeficientError`` is raised.
    """
    n, p = data.n, data.p
    if n <= p:
        raise RankDeficientError(
            f"sample covariance is rank deficient with n={n} <= p={p}; "
            "whitening needs n > p"
        )
    xc = data.x - data.x.mean(axis=0)
    sigma = _mirror_upper(xc.T @ xc / n)
    w = inv_sqrt_sym(sigma, eig_floor)
    centered = sir_matrix(slice_data(data, h, seed), mode="centered").v
    v = _mirror_upper(w @ centered @ w)
    return SirMatrix(v=v, mode="whitened", h=int(h))
