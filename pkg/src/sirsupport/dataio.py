"""CSV ingestion, real-data recovery reports, and deterministic emitters.

All emitters format floats with ``repr``, which round-trips IEEE
doubles exactly, uses a decimal point and never a thousands separator.
Files are written with "\\n" line endings so a rerun with the same
inputs is byte-identical.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, asdict

import numpy as np

from .curves import EfficiencyCurve, StabilityDiagnostic
from .dt import _oriented_principal_eigenvector, dt_sir
from .errors import IngestError, InvalidArgumentError, RankDeficientError
from .models import Dataset
from .sdp import SdpConfig, default_lambda, sdp_sign_recover, sdp_solve
from .sir import sir_matrix_whitened
from .version import __version__

__all__ = [
    "IngestedTable",
    "RecoveryRow",
    "RecoveryReport",
    "RunManifest",
    "ingest_csv",
    "recover_real",
    "emit_curve_csv",
    "emit_dataset_csv",
    "emit_diagnostic_csv",
    "emit_recovery_csv",
    "emit_matrix_csv",
    "read_matrix_csv",
    "write_manifest",
]

RECOVER_METHODS = ("dt", "sdp")


@dataclass(frozen=True)
class IngestedTable:
    """A numeric table split into predictors and a response column.

    ``n_dropped`` counts the rows rejected because of missing values.
    """

    columns: tuple[str, ...]
    y_column: str
    x: np.ndarray
    y: np.ndarray
    n_dropped: int

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    @property
    def p(self) -> int:
        return int(self.x.shape[1])


def _fmt(value: float) -> str:
    return repr(float(value))


def _cell_is_missing(cell: str) -> bool:
    text = cell.strip()
    return text == "" or text.lower() in ("nan", "na")


def ingest_csv(path, y_column: str) -> IngestedTable:
    """Read a headed CSV of numbers, dropping rows with missing values.

    Rows with empty (or NaN) cells are rejected and counted rather than
    imputed.  A non-numeric cell is an error citing the file row number
    (the header is row 1) and the column name.  Fewer than 2 complete
    rows is an error.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError(f"{path}: file is empty, expected a header row") from None
        header = [name.strip() for name in header]
        if y_column not in header:
            raise IngestError(
                f"{path}: response column {y_column!r} not found; columns are {header}"
            )
        y_idx = header.index(y_column)
        x_names = tuple(name for j, name in enumerate(header) if j != y_idx)
        rows: list[list[float]] = []
        dropped = 0
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise IngestError(
                    f"{path}: row {line_no} has {len(row)} fields, expected {len(header)}"
                )
            if any(_cell_is_missing(cell) for cell in row):
                dropped += 1
                continue
            parsed = []
            for j, cell in enumerate(row):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise IngestError(
                        f"{path}: non-numeric value {cell.strip()!r} at row {line_no}, "
                        f"column {header[j]!r}"
                    ) from None
            rows.append(parsed)
    if len(rows) < 2:
        raise IngestError(
            f"{path}: only {len(rows)} complete rows after dropping {dropped}; need at least 2"
        )
    table = np.asarray(rows, dtype=float)
    mask = np.ones(len(header), dtype=bool)
    mask[y_idx] = False
    return IngestedTable(
        columns=x_names,
        y_column=y_column,
        x=table[:, mask],
        y=table[:, y_idx],
        n_dropped=dropped,
    )


@dataclass(frozen=True)
class RecoveryRow:
    variable: str
    score: float
    rank: int
    selected: bool
    sign: int


@dataclass(frozen=True)
class RecoveryReport:
    method: str
    s: int
    h: int
    rows: tuple[RecoveryRow, ...]


def recover_real(table: IngestedTable, s: int, h: int = 10, method: str = "dt", seed: int = 0) -> RecoveryReport:
    """Rank all variables of an ingested table by a whitened slice-mean fit.

    Scores are the diagonal entries of the whitened matrix for "dt" and
    the principal-eigenvector magnitudes of the penalized solution for
    "sdp".  Exactly min(s, p) variables are marked selected; signs come
    from the corresponding signed-support extraction.
    """
    if method not in RECOVER_METHODS:
        raise InvalidArgumentError(f"method must be one of {RECOVER_METHODS}, got {method!r}")
    p = table.p
    if not (isinstance(s, (int, np.integer)) and 1 <= s <= p):
        raise InvalidArgumentError(f"need 1 <= s <= p, got s={s}, p={p}")
    if table.n <= p:
        raise RankDeficientError(
            f"n={table.n} <= p={p}: the whitened fit needs n > p; "
            "whiten or reduce the design externally and retry"
        )
    data = Dataset(x=table.x, y=table.y, seed_provenance={"source": "ingested"})
    v = sir_matrix_whitened(data, h, seed)
    if method == "dt":
        scores = np.diag(v.v).copy()
        signs = dt_sir(v, int(s)).signs
    else:
        sol = sdp_solve(v, SdpConfig(lam=default_lambda(v, int(s))))
        scores = np.abs(_oriented_principal_eigenvector(sol.z))
        signs = sdp_sign_recover(sol, int(s)).signs
    order = np.argsort(-scores, kind="stable")  # ties broken toward earlier columns
    n_selected = min(int(s), p)
    rows = []
    for rank_minus_one, j in enumerate(order):
        rows.append(
            RecoveryRow(
                variable=table.columns[j],
                score=float(scores[j]),
                rank=rank_minus_one + 1,
                selected=rank_minus_one < n_selected,
                sign=int(signs[j]),
            )
        )
    return RecoveryReport(method=method, s=int(s), h=int(h), rows=tuple(rows))


CURVE_HEADER = "model,p,s,method,mode,H,gamma,n,reps,successes,success_rate,skipped"


def emit_curve_csv(curve: EfficiencyCurve, path) -> str:
    """Write one row per grid point, in gamma order, under a fixed header.

    Skipped points carry skipped=true with empty successes and
    success_rate.  Re-emitting the same curve is byte-identical.
    """
    cfg = curve.config
    lines = [CURVE_HEADER]
    for pt in curve.points:
        successes = "" if pt.successes is None else str(pt.successes)
        rate = "" if pt.success_rate is None else _fmt(pt.success_rate)
        lines.append(
            f"{cfg.model.link},{cfg.p},{cfg.s},{cfg.method},{cfg.estimator_mode},"
            f"{cfg.h},{_fmt(pt.gamma)},{pt.n},{pt.reps},{successes},{rate},"
            f"{'true' if pt.skipped else 'false'}"
        )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return str(path)


def emit_dataset_csv(data: Dataset, path) -> str:
    """Write a dataset as y,x1,...,xp with exact float round-trip."""
    names = ["y"] + [f"x{j + 1}" for j in range(data.p)]
    lines = [",".join(names)]
    for i in range(data.n):
        lines.append(",".join([_fmt(data.y[i])] + [_fmt(v) for v in data.x[i]]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return str(path)


def emit_diagnostic_csv(diag: StabilityDiagnostic, model_name: str, mc_n: int, path) -> str:
    """Write per-slice variances, one row per (H, slice)."""
    lines = ["model,mc_n,H,slice,y_lo,y_hi,variance,sum_h,mean_decay"]
    for h, variances, edges, total, decay in zip(
        diag.h_grid, diag.per_slice_variances, diag.boundaries, diag.sums, diag.mean_decay
    ):
        for k in range(h):
            lines.append(
                f"{model_name},{mc_n},{h},{k + 1},{_fmt(edges[k])},{_fmt(edges[k + 1])},"
                f"{_fmt(variances[k])},{_fmt(total)},{_fmt(decay)}"
            )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return str(path)


def emit_recovery_csv(report: RecoveryReport, path) -> str:
    lines = ["variable,score,rank,selected,sign"]
    for row in report.rows:
        lines.append(
            f"{row.variable},{_fmt(row.score)},{row.rank},"
            f"{'true' if row.selected else 'false'},{row.sign}"
        )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return str(path)


def emit_matrix_csv(m: np.ndarray, path) -> str:
    m = np.asarray(m, dtype=float)
    lines = [",".join(_fmt(v) for v in row) for row in m]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return str(path)


def read_matrix_csv(path) -> np.ndarray:
    """Read a headerless square numeric matrix."""
    try:
        m = np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError as exc:
        raise IngestError(f"{path}: could not parse a numeric matrix: {exc}") from None
    if m.shape[0] != m.shape[1]:
        raise IngestError(f"{path}: matrix must be square, got shape {m.shape}")
    return m


@dataclass(frozen=True)
class RunManifest:
    """What was run: written next to every emitted artifact."""

    command: str
    config_path: str | None
    output_dir: str
    seed: int | None
    version: str = __version__


def write_manifest(manifest: RunManifest, effective_config: dict, path) -> str:
    payload = dict(asdict(manifest))
    payload["config"] = effective_config
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return str(path)
