"""
Fixed-rank matrix calculus and first-order checks for CUR and SVD truncation.

The derivative of the rank-truncated CUR map at an admissible base point is
the oblique tangent projection. The helpers here measure how well that
first-order model explains observed errors, and provide finite-difference
oracles that do not depend on the closed-form derivative.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .cur import cur_rank_truncated
from .dense import CompactSVD, as_matrix, pinv_truncated, truncate_rank
from .errors import HypothesisViolationError, InvalidInputError
from .tangent import (
    TangentPoint,
    make_tangent_point,
    oblique_tangent_project,
    orthogonal_tangent_project,
)

DEFAULT_C = 0.2
FD_STEP = 1e-5


def remainder_constant(c):
    """Constant ``(12 - 16c) / (1 - 2c)`` of the truncation remainder bound."""
    return (12.0 - 16.0 * c) / (1.0 - 2.0 * c)


def _rank_r_svd(W, r):
    U, s, Vt = np.linalg.svd(W, full_matrices=False)
    return CompactSVD(U[:, :r], s[:r], Vt[:r, :].T), s


def _numerical_rank(s, rel_tol=1e-10):
    return int(np.count_nonzero(s > rel_tol * s[0])) if s[0] > 0 else 0


def pinv_derivative(W, Wdot, r=None):
    """Derivative of ``pinv`` at a rank-``r`` matrix ``W`` along ``Wdot``.

    Valid when ``Wdot`` is the velocity of a fixed-rank curve through ``W``;
    a warning is issued if its normal component exceeds ``1e-8 * ||Wdot||``.
    ``r`` defaults to the numerical rank of ``W``.
    """
    W = as_matrix(W, "W")
    Wdot = as_matrix(Wdot, "Wdot")
    if Wdot.shape != W.shape:
        raise InvalidInputError(f"Wdot shape {Wdot.shape} does not match W shape {W.shape}")
    s = np.linalg.svd(W, compute_uv=False)
    if r is None:
        r = _numerical_rank(s)
    if r < 1 or r > s.size or s[r - 1] <= 1e-10 * s[0]:
        raise InvalidInputError(f"W is numerically rank-deficient for r={r}")
    Wp = pinv_truncated(W, r)
    left = np.eye(W.shape[0]) - W @ Wp
    right = np.eye(W.shape[1]) - Wp @ W
    normal = np.linalg.norm(left @ Wdot @ right, 2)
    if normal > 1e-8 * np.linalg.norm(Wdot, 2):
        warnings.warn(
            f"Wdot has a normal component of size {normal:.2e}; it is not a fixed-rank velocity",
            RuntimeWarning,
            stacklevel=2,
        )
    return -Wp @ Wdot @ Wp + Wp @ Wp.T @ Wdot.T @ left + right @ Wdot.T @ Wp.T @ Wp


def fixed_rank_velocity_residual(svdW, Wdot):
    """``||(I - QQ^T) Wdot (I - ZZ^T)||_2``; zero for tangent velocities."""
    Wdot = as_matrix(Wdot, "Wdot")
    if Wdot.shape != svdW.shape:
        raise InvalidInputError(f"Wdot shape {Wdot.shape} does not match {svdW.shape}")
    Q, Z = svdW.left, svdW.right
    Y = Wdot - Q @ (Q.T @ Wdot)
    Y = Y - (Y @ Z) @ Z.T
    return float(np.linalg.norm(Y, 2))


@dataclass(frozen=True)
class ExpansionReport:
    remainder_norm: float
    bound: float
    gamma: float
    c_used: float
    satisfied: bool


def truncation_expansion(W, E, r, c_used=DEFAULT_C):
    """Check the quantitative first-order expansion of rank-``r`` truncation.

    Computes ``R = (W + E)_r - W - P_T(E)`` and compares ``||R||_2`` against
    ``(12 - 16c)/(1 - 2c) * ||E||_2**2 / gamma`` with ``gamma = sigma_r(W)``.

    Raises
    ------
    HypothesisViolationError
        If ``||E||_2 > c_used * gamma``.
    """
    W = as_matrix(W, "W")
    E = as_matrix(E, "E")
    if E.shape != W.shape:
        raise InvalidInputError(f"E shape {E.shape} does not match W shape {W.shape}")
    if not 0.0 < c_used < 0.5:
        raise InvalidInputError(f"c_used must lie in (0, 1/2), got {c_used}")
    if not 1 <= r <= min(W.shape):
        raise InvalidInputError(f"r must lie in [1, {min(W.shape)}], got {r}")
    svdW, s = _rank_r_svd(W, r)
    gamma = float(s[r - 1])
    if gamma <= 1e-10 * s[0]:
        raise InvalidInputError(f"W does not have rank {r}")
    e_norm = float(np.linalg.norm(E, 2))
    if e_norm > c_used * gamma:
        raise HypothesisViolationError(
            f"||E||_2 = {e_norm:.3e} exceeds c * gamma = {c_used * gamma:.3e}"
        )
    remainder = truncate_rank(W + E, r) - W - orthogonal_tangent_project(svdW, E)
    rem = float(np.linalg.norm(remainder, 2))
    bound = remainder_constant(c_used) * e_norm**2 / gamma
    return ExpansionReport(rem, bound, gamma, c_used, rem <= bound + 1e-12)


def cur_frechet_derivative(tp: TangentPoint, E):
    """Derivative of the rank-truncated CUR map at ``tp.matrix`` applied to ``E``."""
    return oblique_tangent_project(tp, E)


def finite_difference_derivative(map_kind, M, E, t=None, sel=None, r=None):
    """Central difference ``(F(M + tE) - F(M - tE)) / (2t)``.

    Parameters
    ----------
    map_kind : {"cur_truncated", "svd_truncated"} or callable
        Which map ``F`` to differentiate. A callable is used as ``F`` directly.
    M, E : ndarray
        Base point and direction.
    t : float, optional
        Step. Defaults to ``1e-5 * max(1, ||M||_F)``.
    sel : SelectionPair
        Required for ``"cur_truncated"``.
    r : int
        Target rank; required for both named maps.
    """
    M = as_matrix(M, "M")
    E = as_matrix(E, "E")
    if t is None:
        t = FD_STEP * max(1.0, float(np.linalg.norm(M, "fro")))
    if t <= 0:
        raise InvalidInputError(f"step must be positive, got {t}")
    if callable(map_kind):
        F = map_kind
    elif map_kind == "cur_truncated":
        if sel is None or r is None:
            raise InvalidInputError("cur_truncated needs both sel and r")
        def F(A):
            return cur_rank_truncated(A, sel, r)
    elif map_kind == "svd_truncated":
        if r is None:
            raise InvalidInputError("svd_truncated needs r")
        def F(A):
            return truncate_rank(A, r)
    else:
        raise InvalidInputError(f"unknown map kind {map_kind!r}")
    return (F(M + t * E) - F(M - t * E)) / (2.0 * t)


def cur_hypothesis_holds(tp, E, c_used=DEFAULT_C):
    """Whether ``||S^T E P||_2 <= c * sigma_r(S^T M P)``."""
    sel = tp.sel
    E = as_matrix(E, "E")
    W = tp.matrix[np.ix_(sel.rows, sel.cols)]
    gamma = np.linalg.svd(W, compute_uv=False)[tp.rank - 1]
    return float(np.linalg.norm(E[np.ix_(sel.rows, sel.cols)], 2)) <= c_used * gamma


def svd_hypothesis_holds(svd, E, c_used=DEFAULT_C):
    """Whether ``||E||_2 <= c * sigma_r(M)``."""
    return float(np.linalg.norm(E, 2)) <= c_used * float(svd.sigmas[-1])


def cur_first_order_residual(tp, E, c_used=DEFAULT_C, enforce=True):
    """Return ``(||Phi_r(M+E) - M - I(E)||_F, ||I(E)||_F)``.

    Raises HypothesisViolationError outside the local regime unless
    ``enforce`` is False.
    """
    E = as_matrix(E, "E")
    if enforce and not cur_hypothesis_holds(tp, E, c_used):
        raise HypothesisViolationError("||S^T E P||_2 exceeds c * sigma_r(S^T M P)")
    M = tp.matrix
    first = oblique_tangent_project(tp, E)
    out = cur_rank_truncated(M + E, tp.sel, tp.rank)
    return float(np.linalg.norm(out - M - first)), float(np.linalg.norm(first))


def svd_first_order_residual(svd, E, r=None, c_used=DEFAULT_C, enforce=True):
    """Return ``(||(M+E)_r - M - P_T(E)||_F, ||P_T(E)||_F)``.

    Raises HypothesisViolationError if ``||E||_2 > c * sigma_r(M)`` and
    ``enforce`` is set.
    """
    E = as_matrix(E, "E")
    r = svd.rank if r is None else r
    if r != svd.rank:
        raise InvalidInputError(f"r={r} does not match the rank {svd.rank} of the SVD")
    if enforce and not svd_hypothesis_holds(svd, E, c_used):
        raise HypothesisViolationError("||E||_2 exceeds c * sigma_r(M)")
    M = svd.reconstruct()
    first = orthogonal_tangent_project(svd, E)
    out = truncate_rank(M + E, r)
    return float(np.linalg.norm(out - M - first)), float(np.linalg.norm(first))


def cur_pinv_consequence_check(svd, sel):
    """Return ``(||(I - WW^+) S^T M||_F, ||M P (I - W^+ W)||_F)`` with ``W = S^T M P``.

    Both vanish for admissible sampling; raises AdmissibilityError otherwise.
    """
    make_tangent_point(svd, sel)
    M = svd.reconstruct()
    R = M[sel.rows, :]
    C = M[:, sel.cols]
    W = R[:, sel.cols]
    Wp = pinv_truncated(W, svd.rank)
    left = R - W @ (Wp @ R)
    right = C - (C @ Wp) @ W
    return float(np.linalg.norm(left)), float(np.linalg.norm(right))


def loglog_slope(xs, ys, floor=0.0):
    """Least-squares slope of ``log10(y)`` against ``log10(x)`` over points with ``y > floor``.

    Returns ``nan`` when fewer than two points survive.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    keep = (ys > floor) & (ys > 0) & (xs > 0)
    if np.count_nonzero(keep) < 2:
        return float("nan")
    slope, _ = np.polyfit(np.log10(xs[keep]), np.log10(ys[keep]), 1)
    return float(slope)


def rounding_floor(M):
    """Residuals below ``1e3 * eps * ||M||_F`` are treated as rounding noise."""
    return 1e3 * np.finfo(np.float64).eps * float(np.linalg.norm(M, "fro"))

