"""
Unit-Frobenius perturbation generators.

Four families: generic Gaussian, sampling-invisible (zero on the sampled rows
and columns), orthogonal-normal (annihilated by the orthogonal tangent
projector) and gradually visible (a blend of the invisible part and the
visible remainder of one Gaussian draw).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import gaussian_matrix
from .errors import DegenerateInputError, InvalidInputError
from .tangent import normal_project

FAMILIES = ("generic", "invisible", "normal", "visible")


@dataclass(frozen=True)
class PerturbationSpec:
    family: str
    seed: int
    alpha: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInputError(f"unknown perturbation family {self.family!r}")
        if self.family == "visible" and not self.alpha > 0:
            raise InvalidInputError("visible perturbations need alpha > 0")

    def generate(self, svd, sel):
        m, n = svd.shape
        if self.family == "generic":
            return generic_perturbation(m, n, self.seed)
        if self.family == "invisible":
            return invisible_perturbation(sel, m, n, self.seed)
        if self.family == "normal":
            return normal_perturbation(svd, self.seed)
        return visible_perturbation(sel, m, n, self.alpha, self.seed)


def _normalized(X, what):
    nrm = np.linalg.norm(X)
    if nrm == 0.0:
        raise DegenerateInputError(f"{what} component is zero; cannot normalize")
    return X / nrm


def generic_perturbation(m, n, seed):
    """``G / ||G||_F`` for a standard Gaussian ``G``."""
    return _normalized(gaussian_matrix(m, n, seed), "generic")


def _invisible_part(G, sel):
    # zeroed by assignment so S^T E = 0 and E P = 0 hold bit-exactly
    X = G.copy()
    X[sel.rows, :] = 0.0
    X[:, sel.cols] = 0.0
    return X


def invisible_perturbation(sel, m, n, seed):
    """Normalized ``(I - SS^T) G (I - PP^T)``."""
    if (m, n) != (sel.m, sel.n):
        raise InvalidInputError(f"dimensions ({m}, {n}) do not match selection ({sel.m}, {sel.n})")
    if sel.s == m or sel.c == n:
        raise DegenerateInputError("every row or every column is sampled; no invisible directions exist")
    return _normalized(_invisible_part(gaussian_matrix(m, n, seed), sel), "invisible")


def normal_perturbation(svd, seed):
    """Normalized ``(I - UU^T) G (I - VV^T)``."""
    m, n = svd.shape
    if svd.rank >= min(m, n):
        raise DegenerateInputError("rank equals min(m, n); the normal space is trivial")
    return _normalized(normal_project(svd, gaussian_matrix(m, n, seed)), "normal")


def visible_components(sel, m, n, seed):
    """Normalized invisible and visible parts of one Gaussian draw."""
    if (m, n) != (sel.m, sel.n):
        raise InvalidInputError(f"dimensions ({m}, {n}) do not match selection ({sel.m}, {sel.n})")
    G = gaussian_matrix(m, n, seed)
    inv = _invisible_part(G, sel)
    return _normalized(inv, "invisible"), _normalized(G - inv, "visible")


def visible_perturbation(sel, m, n, alpha, seed):
    """Normalized ``E_inv + alpha * E_vis`` built from a single draw per seed."""
    if not alpha > 0:
        raise InvalidInputError(f"alpha must be positive, got {alpha}")
    e_inv, e_vis = visible_components(sel, m, n, seed)
    return _normalized(e_inv + alpha * e_vis, "blended")
