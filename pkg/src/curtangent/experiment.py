"""
Numerical studies comparing rank-truncated CUR with rank-r SVD truncation.

A rank-r test matrix ``M = U diag(sigmas) V^T`` is built from orthonormalized
Gaussian factors, rows and columns are sampled by top leverage scores, and a
fixed unit perturbation ``E`` is swept over a grid of sizes ``eps``. Each
record holds the observed recovery errors and their first-order predictions.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .calculus import cur_hypothesis_holds, svd_hypothesis_holds
from .cur import cur_rank_truncated
from .dense import CompactSVD, orthonormalize_gaussian, truncate_rank
from .errors import ConstructionError, InvalidInputError
from .perturb import (
    generic_perturbation,
    invisible_perturbation,
    normal_perturbation,
    visible_perturbation,
)
from .sampling import is_admissible, leverage_selection
from .tangent import make_tangent_point, oblique_tangent_project, orthogonal_tangent_project

log = logging.getLogger(__name__)

CSV_HEADER = ("epsilon", "alpha", "err_cur", "err_svd", "pred_cur", "pred_svd")
MAX_ATTEMPTS = 16
PERTURBATION_SEED_OFFSET = 100


def log_grid(lo, hi, per_decade):
    """Points ``10**(log10(lo) + k / per_decade)`` up to ``hi`` inclusive."""
    if not (0 < lo <= hi) or per_decade < 1:
        raise InvalidInputError(f"bad grid ({lo}, {hi}, {per_decade})")
    a, b = math.log10(lo), math.log10(hi)
    count = int(round((b - a) * per_decade)) + 1
    return [10.0 ** (a + k / per_decade) for k in range(count)]


def default_singular_values(r):
    """``10**(-(i-1)/4)`` for ``i = 1..r``."""
    return [10.0 ** (-i / 4.0) for i in range(r)]


@dataclass
class ExperimentConfig:
    m: int = 80
    n: int = 70
    r: int = 5
    s: int | None = None
    c: int | None = None
    seed: int = 0
    eps_grid: list = field(default_factory=lambda: log_grid(1e-8, 1e-1, 2))
    alpha_grid: list = field(default_factory=lambda: log_grid(1e-3, 1e1, 5))
    eps_fixed: list = field(default_factory=lambda: [1e-6, 1e-5, 1e-4])
    output_path: str | None = None

    def __post_init__(self):
        if self.s is None:
            self.s = 2 * self.r
        if self.c is None:
            self.c = 2 * self.r
        if not 1 <= self.r <= min(self.s, self.c):
            raise InvalidInputError(f"need 1 <= r <= min(s, c), got r={self.r}, s={self.s}, c={self.c}")
        if self.s > self.m or self.c > self.n:
            raise InvalidInputError(f"cannot sample {self.s}x{self.c} from {self.m}x{self.n}")
        for name in ("eps_grid", "alpha_grid", "eps_fixed"):
            grid = [float(x) for x in getattr(self, name)]
            if any(x <= 0 for x in grid) or grid != sorted(grid):
                raise InvalidInputError(f"{name} must be positive and ascending")
            setattr(self, name, grid)


@dataclass(frozen=True)
class ExperimentRecord:
    """One observation. ``in_hypothesis`` is kept in memory only, never written."""

    epsilon: float
    alpha: float | None
    err_cur: float
    err_svd: float
    pred_cur: float
    pred_svd: float
    in_hypothesis: bool = True


def build_test_problem(cfg):
    """Return ``(svd, sel, tangent_point)`` for the configured test matrix.

    ``U`` uses seed ``cfg.seed + 2k`` and ``V`` seed ``cfg.seed + 2k + 1``
    on attempt ``k``; an inadmissible leverage-score selection triggers the
    next attempt.
    """
    sigmas = np.array(default_singular_values(cfg.r))
    tried = []
    for attempt in range(MAX_ATTEMPTS):
        seed = cfg.seed + 2 * attempt
        tried.append(seed)
        U = orthonormalize_gaussian(cfg.m, cfg.r, seed)
        V = orthonormalize_gaussian(cfg.n, cfg.r, seed + 1)
        svd = CompactSVD(U, sigmas, V)
        sel = leverage_selection(svd, cfg.s, cfg.c)
        if is_admissible(svd, sel):
            return svd, sel, make_tangent_point(svd, sel)
        log.info("seed %d gave an inadmissible selection, retrying", seed)
    raise ConstructionError(f"no admissible selection after {MAX_ATTEMPTS} attempts; seeds tried: {tried}")


def _record(tp, E, eps, alpha=None):
    svd, sel, M = tp.svd, tp.sel, tp.matrix
    A = M + eps * E
    err_cur = float(np.linalg.norm(cur_rank_truncated(A, sel, tp.rank) - M))
    err_svd = float(np.linalg.norm(truncate_rank(A, tp.rank) - M))
    pred_cur = eps * float(np.linalg.norm(oblique_tangent_project(tp, E)))
    pred_svd = eps * float(np.linalg.norm(orthogonal_tangent_project(svd, E)))
    ok = cur_hypothesis_holds(tp, eps * E) and svd_hypothesis_holds(svd, eps * E)
    return ExperimentRecord(eps, alpha, err_cur, err_svd, pred_cur, pred_svd, ok)


def _sweep(tp, E, eps_grid):
    return sorted((_record(tp, E, eps) for eps in eps_grid), key=lambda rec: rec.epsilon)


def run_generic_experiment(cfg):
    _, _, tp = build_test_problem(cfg)
    m, n = tp.shape
    E = generic_perturbation(m, n, cfg.seed + PERTURBATION_SEED_OFFSET)
    return _sweep(tp, E, cfg.eps_grid)


def run_structured_experiment(cfg, family):
    """Sweep ``eps`` for a sampling-invisible or orthogonal-normal ``E``."""
    svd, sel, tp = build_test_problem(cfg)
    m, n = tp.shape
    seed = cfg.seed + PERTURBATION_SEED_OFFSET
    if family == "invisible":
        E = invisible_perturbation(sel, m, n, seed)
    elif family == "normal":
        E = normal_perturbation(svd, seed)
    else:
        raise InvalidInputError(f"structured family must be 'invisible' or 'normal', got {family!r}")
    return _sweep(tp, E, cfg.eps_grid)


def run_visibility_experiment(cfg):
    """One record per ``(eps, alpha)``; the Gaussian draw is shared across alphas."""
    if not cfg.eps_fixed:
        raise InvalidInputError("eps_fixed must be nonempty")
    _, sel, tp = build_test_problem(cfg)
    m, n = tp.shape
    seed = cfg.seed + PERTURBATION_SEED_OFFSET
    records = []
    for alpha in cfg.alpha_grid:
        E = visible_perturbation(sel, m, n, alpha, seed)
        records.extend(_record(tp, E, eps, alpha) for eps in cfg.eps_fixed)
    return sorted(records, key=lambda rec: (rec.epsilon, rec.alpha))


def run_experiment(cfg, kind):
    if kind == "generic":
        return run_generic_experiment(cfg)
    if kind in ("invisible", "normal"):
        return run_structured_experiment(cfg, kind)
    if kind == "visibility":
        return run_visibility_experiment(cfg)
    raise InvalidInputError(f"unknown experiment {kind!r}")


def _fmt(x):
    return "" if x is None else repr(float(x))


def csv_text(records):
    """Records as CSV text with header ``epsilon,alpha,err_cur,err_svd,pred_cur,pred_svd``.

    Floats use the shortest round-trip representation; ``alpha`` is blank
    when absent.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow([_fmt(getattr(rec, key)) for key in CSV_HEADER])
    return buf.getvalue()


def write_csv(records, path):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text(records))
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise InvalidInputError(f"{path} does not have the expected header")
        return [
            ExperimentRecord(
                float(row["epsilon"]),
                float(row["alpha"]) if row["alpha"] else None,
                float(row["err_cur"]),
                float(row["err_svd"]),
                float(row["pred_cur"]),
                float(row["pred_svd"]),
            )
            for row in reader
        ]
