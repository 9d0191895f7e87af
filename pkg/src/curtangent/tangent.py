"""
Tangent-space projectors at a point ``M = U diag(sigmas) V^T`` of the
fixed-rank manifold.

Two projectors onto the same tangent space are provided: the orthogonal one,
built from ``UU^T`` and ``VV^T``, and the oblique one induced by a sampling
pair, built from ``Pi_U = U pinv(S^T U) S^T`` and ``Pi_V = P pinv(V^T P) V^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dense import CompactSVD, as_matrix, pinv
from .errors import AdmissibilityError, InvalidInputError
from .sampling import DEFAULT_ADMISSIBILITY_TOL, SelectionPair, sampled_singular_values


@dataclass(frozen=True)
class TangentPoint:
    """An admissible ``(M, S, P)`` with the oblique projectors cached."""

    svd: CompactSVD
    sel: SelectionPair
    pi_u: np.ndarray
    pi_v: np.ndarray

    @property
    def shape(self):
        return self.svd.shape

    @property
    def rank(self):
        return self.svd.rank

    @cached_property
    def matrix(self):
        """The base point ``M``."""
        return self.svd.reconstruct()


def make_tangent_point(svd, sel, tol=DEFAULT_ADMISSIBILITY_TOL):
    """Build the oblique projectors for an admissible sampling of ``svd``.

    Raises
    ------
    AdmissibilityError
        If ``S^T U`` or ``V^T P`` has a singular value below ``tol``.
    """
    su, vp = sampled_singular_values(svd, sel)
    if su < tol or vp < tol:
        raise AdmissibilityError(
            f"sampling is not admissible: sigma_min(S^T U)={su:.3e}, "
            f"sigma_min(V^T P)={vp:.3e}, tol={tol:.1e}"
        )
    m, n = svd.shape
    U, V = svd.left, svd.right
    # Pi_U is nonzero only in the sampled columns, Pi_V only in the sampled rows
    pi_u = np.zeros((m, m))
    pi_u[:, sel.rows] = U @ pinv(U[sel.rows, :])
    pi_v = np.zeros((n, n))
    pi_v[sel.cols, :] = pinv(V[sel.cols, :].T) @ V.T
    pi_u.setflags(write=False)
    pi_v.setflags(write=False)
    return TangentPoint(svd, sel, pi_u, pi_v)


def _check_shape(Z, shape):
    Z = as_matrix(Z, "E")
    if Z.shape != shape:
        raise InvalidInputError(f"expected a {shape} matrix, got {Z.shape}")
    return Z


def orthogonal_tangent_project(svd, Z):
    """``UU^T Z + Z VV^T - UU^T Z VV^T``."""
    Z = _check_shape(Z, svd.shape)
    U, V = svd.left, svd.right
    UtZ = U.T @ Z
    ZV = Z @ V
    return U @ UtZ + ZV @ V.T - U @ (UtZ @ V) @ V.T


def normal_project(svd, Z):
    """``(I - UU^T) Z (I - VV^T)``."""
    Z = _check_shape(Z, svd.shape)
    U, V = svd.left, svd.right
    Y = Z - U @ (U.T @ Z)
    return Y - (Y @ V) @ V.T


def oblique_tangent_project(tp: TangentPoint, E):
    """``Pi_U E + E Pi_V - Pi_U E Pi_V``."""
    E = _check_shape(E, tp.shape)
    pu_e = tp.pi_u @ E
    return pu_e + E @ tp.pi_v - pu_e @ tp.pi_v


def obliqueness(tp):
    """Return ``(delta_u, delta_v, norm_pi_v)``.

    ``delta_u = ||Pi_U - UU^T||_2``, ``delta_v = ||Pi_V - VV^T||_2`` and
    ``norm_pi_v = ||Pi_V||_2``.
    """
    U, V = tp.svd.left, tp.svd.right
    delta_u = np.linalg.norm(tp.pi_u - U @ U.T, 2)
    delta_v = np.linalg.norm(tp.pi_v - V @ V.T, 2)
    return float(delta_u), float(delta_v), float(np.linalg.norm(tp.pi_v, 2))


def comparison_gap(tp, E):
    """Both sides of the obliqueness comparison for a perturbation ``E``.

    Returns ``(lhs, rhs)`` with ``lhs = ||I(E) - P(E)||_2`` for the oblique
    and orthogonal tangent projections and
    ``rhs = (delta_u (1 + ||Pi_V||_2) + 2 delta_v) ||E||_2``. ``lhs <= rhs``
    always holds up to rounding.
    """
    E = _check_shape(E, tp.shape)
    gap = oblique_tangent_project(tp, E) - orthogonal_tangent_project(tp.svd, E)
    delta_u, delta_v, norm_pi_v = obliqueness(tp)
    lhs = float(np.linalg.norm(gap, 2))
    rhs = (delta_u * (1.0 + norm_pi_v) + 2.0 * delta_v) * float(np.linalg.norm(E, 2))
    return lhs, rhs
