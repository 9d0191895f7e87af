"""
Randomized property suites behind ``curtangent verify``.

Each suite returns a list of :class:`Check` results; nothing raises on a
failed property so the caller can report every line.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import (
    cur_pinv_consequence_check,
    finite_difference_derivative,
    fixed_rank_velocity_residual,
    loglog_slope,
    pinv_derivative,
    rounding_floor,
    truncation_expansion,
)
from .cur import cur_rank_truncated
from .dense import CompactSVD, gaussian_matrix, orthonormalize_gaussian, pinv_truncated, truncate_rank
from .experiment import ExperimentConfig, build_test_problem
from .perturb import generic_perturbation, invisible_perturbation
from .sampling import SelectionPair
from .tangent import (
    comparison_gap,
    make_tangent_point,
    normal_project,
    oblique_tangent_project,
    orthogonal_tangent_project,
)

SUITES = ("projectors", "calculus", "bounds")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def random_problem(seed, m=80, n=70, r=5):
    """Admissible leverage-sampled test problem, seeds spaced so retries never collide."""
    return build_test_problem(ExperimentConfig(m=m, n=n, r=r, seed=1000 * seed))


def random_rank_r(s, c, r, seed):
    """Random ``s x c`` matrix of rank ``r`` with singular values in [0.5, 2]."""
    Q = orthonormalize_gaussian(s, r, seed)
    Z = orthonormalize_gaussian(c, r, seed + 1)
    rng = np.random.default_rng(seed + 2)
    return (Q * np.sort(rng.uniform(0.5, 2.0, r))[::-1]) @ Z.T


def _rel(x, scale):
    return x / max(scale, 1e-300)


def projectors_suite(instances=100):
    worst = {"exact": 0.0, "idem": 0.0, "fixed": 0.0, "range": 0.0, "kernel": 0.0, "prop": -np.inf}
    full_gap = 0.0
    for k in range(instances):
        svd, sel, tp = random_problem(k)
        M = tp.matrix
        m, n = tp.shape
        worst["exact"] = max(worst["exact"], _rel(np.linalg.norm(cur_rank_truncated(M, sel, tp.rank) - M), np.linalg.norm(M)))
        E = generic_perturbation(m, n, 7 * k + 1)
        IE = oblique_tangent_project(tp, E)
        worst["idem"] = max(worst["idem"], _rel(np.linalg.norm(oblique_tangent_project(tp, IE) - IE), np.linalg.norm(IE)))
        X = gaussian_matrix(n, tp.rank, 7 * k + 2)
        Y = gaussian_matrix(m, tp.rank, 7 * k + 3)
        T = svd.left @ X.T + Y @ svd.right.T
        worst["fixed"] = max(worst["fixed"], _rel(np.linalg.norm(oblique_tangent_project(tp, T) - T), np.linalg.norm(T)))
        worst["range"] = max(worst["range"], _rel(np.linalg.norm(normal_project(svd, IE)), np.linalg.norm(E)))
        K = invisible_perturbation(sel, m, n, 7 * k + 4)
        worst["kernel"] = max(worst["kernel"], _rel(np.linalg.norm(oblique_tangent_project(tp, K)), np.linalg.norm(K)))
        lhs, rhs = comparison_gap(tp, E)
        worst["prop"] = max(worst["prop"], lhs - rhs)
        if k < 10:
            full = make_tangent_point(svd, SelectionPair.full(m, n))
            full_gap = max(full_gap, comparison_gap(full, E)[0])
    return [
        Check("exactness Phi_r(M) = M", worst["exact"] <= 1e-11, f"max rel err {worst['exact']:.2e} over {instances}"),
        Check("oblique projector idempotent", worst["idem"] <= 1e-10, f"max rel err {worst['idem']:.2e}"),
        Check("oblique projector fixes tangent vectors", worst["fixed"] <= 1e-10, f"max rel err {worst['fixed']:.2e}"),
        Check("oblique projector range in tangent space", worst["range"] <= 1e-10, f"max rel normal part {worst['range']:.2e}"),
        Check("sampling-invisible E in kernel", worst["kernel"] <= 1e-10, f"max rel {worst['kernel']:.2e}"),
        Check("obliqueness comparison bound", worst["prop"] <= 1e-10, f"max lhs - rhs {worst['prop']:.2e}"),
        Check("full selection gives orthogonal projector", full_gap <= 1e-12, f"max gap {full_gap:.2e}"),
    ]


def derivative_slope(tp, E, eps_values=None):
    """Log-log slope of ``||Phi_r(M + eps E) - M - eps I(E)||_F`` against ``eps``."""
    if eps_values is None:
        eps_values = [10.0 ** (-6 + 0.5 * k) for k in range(7)]
    M = tp.matrix
    IE = oblique_tangent_project(tp, E)
    res = [np.linalg.norm(cur_rank_truncated(M + e * E, tp.sel, tp.rank) - M - e * IE) for e in eps_values]
    return loglog_slope(eps_values, res, rounding_floor(M))


def fd_error_ratio(exact, fd_at):
    """``err(t) / err(t/10)`` for a central-difference oracle ``fd_at``."""
    e1 = np.linalg.norm(fd_at(1e-3) - exact)
    e2 = np.linalg.norm(fd_at(1e-4) - exact)
    return float(e1 / e2) if e2 > 0 else float("inf")


def ratio_ok(ratio):
    return 100.0 / 3.0 <= ratio <= 300.0


def calculus_suite(instances=50):
    slopes, ratios = [], []
    for k in range(instances):
        _, sel, tp = random_problem(k)
        m, n = tp.shape
        E = generic_perturbation(m, n, 11 * k + 5)
        slopes.append(derivative_slope(tp, E))
        IE = oblique_tangent_project(tp, E)
        ratios.append(fd_error_ratio(IE, lambda t: finite_difference_derivative("cur_truncated", tp.matrix, E, t, sel=sel, r=tp.rank)))

    pinv_ratios, vel, cons = [], 0.0, 0.0
    for k in range(20):
        W = random_rank_r(10, 8, 3, 13 * k)
        svdW = _compact(W, 3)
        delta = gaussian_matrix(10, 8, 13 * k + 5)
        Wdot = orthogonal_tangent_project(svdW, delta)
        exact = pinv_derivative(W, Wdot, 3)
        pinv_ratios.append(fd_error_ratio(exact, lambda t: (pinv_truncated(W + t * Wdot, 3) - pinv_truncated(W - t * Wdot, 3)) / (2 * t)))
        h = 1e-5
        vdot = (truncate_rank(W + h * delta, 3) - truncate_rank(W - h * delta, 3)) / (2 * h)
        vel = max(vel, fixed_rank_velocity_residual(svdW, vdot) / np.linalg.norm(delta, 2))
    for k in range(100):
        svd, sel, tp = random_problem(k)
        left, right = cur_pinv_consequence_check(svd, sel)
        cons = max(cons, max(left, right) / np.linalg.norm(tp.matrix))
    slopes = np.array(slopes)
    return [
        Check(
            "CUR remainder is second order",
            bool(np.all(np.abs(slopes - 2.0) <= 0.1)),
            f"slopes in [{slopes.min():.3f}, {slopes.max():.3f}] over {instances}",
        ),
        Check(
            "finite differences match oblique projection",
            all(ratio_ok(x) for x in ratios),
            f"error ratios in [{min(ratios):.1f}, {max(ratios):.1f}]",
        ),
        Check(
            "pinv derivative matches finite differences",
            all(ratio_ok(x) for x in pinv_ratios),
            f"error ratios in [{min(pinv_ratios):.1f}, {max(pinv_ratios):.1f}]",
        ),
        Check("truncation velocity is tangent", vel <= 1e-6, f"max rel normal part {vel:.2e}"),
        Check("pinv consequences vanish", cons <= 1e-10, f"max rel residual {cons:.2e}"),
    ]


def _compact(W, r):
    U, s, Vt = np.linalg.svd(W, full_matrices=False)
    return CompactSVD(U[:, :r], s[:r], Vt[:r].T)


def bounds_suite(instances=500, c_used=0.2):
    worst_ratio, all_ok, weyl = 0.0, True, -np.inf
    for k in range(instances):
        W = random_rank_r(10, 10, 5, 17 * k)
        gamma = np.linalg.svd(W, compute_uv=False)[4]
        E = gaussian_matrix(10, 10, 17 * k + 7)
        E *= 0.1 * gamma / np.linalg.norm(E, 2)
        rep = truncation_expansion(W, E, 5, c_used)
        all_ok &= rep.satisfied
        worst_ratio = max(worst_ratio, rep.remainder_norm / rep.bound)
        weyl = max(weyl, np.linalg.svd(W + E, compute_uv=False)[5] - np.linalg.norm(E, 2))
    return [
        Check("truncation remainder bound", bool(all_ok), f"max remainder/bound {worst_ratio:.3f} over {instances}"),
        Check("Weyl step sigma_(r+1)(W+E) <= ||E||_2", weyl <= 1e-12, f"max excess {weyl:.2e}"),
    ]


def run_suite(name):
    if name == "all":
        return [chk for suite in SUITES for chk in run_suite(suite)]
    if name == "projectors":
        return projectors_suite()
    if name == "calculus":
        return calculus_suite()
    if name == "bounds":
        return bounds_suite()
    raise ValueError(f"unknown suite {name!r}")
