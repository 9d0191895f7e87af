"""
Row and column selection.

Selections are stored as index lists. ``S.T @ A`` is ``A[rows]`` and
``A @ P`` is ``A[:, cols]``; the 0/1 selection matrices themselves are never
formed except for the complement projectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import CompactSVD, as_matrix
from .errors import InvalidInputError

DEFAULT_ADMISSIBILITY_TOL = 1e-8


def _index_tuple(indices, bound, what):
    idx = tuple(int(i) for i in indices)
    if len(idx) < 1:
        raise InvalidInputError(f"at least one {what} index is required")
    if len(set(idx)) != len(idx):
        raise InvalidInputError(f"{what} indices must be distinct: {idx}")
    if any(not 0 <= i < bound for i in idx):
        raise InvalidInputError(f"{what} indices must lie in [0, {bound})")
    return idx


@dataclass(frozen=True)
class SelectionPair:
    """Sampled row indices ``S`` and column indices ``P`` of an ``m x n`` matrix."""

    row_indices: tuple
    col_indices: tuple
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidInputError(f"ambient dimensions must be positive, got ({self.m}, {self.n})")
        object.__setattr__(self, "row_indices", _index_tuple(self.row_indices, self.m, "row"))
        object.__setattr__(self, "col_indices", _index_tuple(self.col_indices, self.n, "column"))

    @classmethod
    def full(cls, m, n):
        return cls(range(m), range(n), m, n)

    @property
    def rows(self):
        return np.array(self.row_indices, dtype=np.intp)

    @property
    def cols(self):
        return np.array(self.col_indices, dtype=np.intp)

    @property
    def s(self):
        return len(self.row_indices)

    @property
    def c(self):
        return len(self.col_indices)


def _check_dims(A, sel):
    if A.shape != (sel.m, sel.n):
        raise InvalidInputError(f"matrix shape {A.shape} does not match selection ({sel.m}, {sel.n})")


def leverage_scores(U, tol=1e-10):
    """Squared row norms of a matrix with orthonormal columns."""
    U = as_matrix(U, "U")
    k = U.shape[1]
    if np.linalg.norm(U.T @ U - np.eye(k), 2) > tol:
        raise InvalidInputError("leverage scores need a matrix with orthonormal columns")
    return np.einsum("ij,ij->i", U, U)


def top_k_selection(scores, k):
    """Indices of the ``k`` largest scores in ascending index order.

    Ties are broken in favour of the smaller index.
    """
    scores = np.asarray(scores, dtype=np.float64)
    if scores.ndim != 1 or not 1 <= k <= scores.size:
        raise InvalidInputError(f"k must lie in [1, {scores.size}], got {k}")
    # lexsort sorts by the last key first
    order = np.lexsort((np.arange(scores.size), -scores))
    return np.sort(order[:k])


def select_rows(A, sel):
    A = np.asarray(A, dtype=np.float64)
    _check_dims(A, sel)
    return A[sel.rows, :]


def select_cols(A, sel):
    A = np.asarray(A, dtype=np.float64)
    _check_dims(A, sel)
    return A[:, sel.cols]


def intersection(A, sel):
    A = np.asarray(A, dtype=np.float64)
    _check_dims(A, sel)
    return A[np.ix_(sel.rows, sel.cols)]


def complement_projector_left(sel, m=None):
    """``I - S S^T`` as an explicit ``m x m`` matrix."""
    m = sel.m if m is None else m
    if m != sel.m:
        raise InvalidInputError(f"m={m} does not match selection m={sel.m}")
    proj = np.eye(m)
    proj[sel.rows, sel.rows] = 0.0
    return proj


def complement_projector_right(sel, n=None):
    """``I - P P^T`` as an explicit ``n x n`` matrix."""
    n = sel.n if n is None else n
    if n != sel.n:
        raise InvalidInputError(f"n={n} does not match selection n={sel.n}")
    proj = np.eye(n)
    proj[sel.cols, sel.cols] = 0.0
    return proj


def sampled_singular_values(svd: CompactSVD, sel: SelectionPair):
    """Smallest singular values of ``S^T U`` and ``V^T P`` (0 if rank-deficient by shape)."""
    if svd.shape != (sel.m, sel.n):
        raise InvalidInputError(f"SVD shape {svd.shape} does not match selection ({sel.m}, {sel.n})")
    r = svd.rank
    out = []
    for basis, idx in ((svd.left, sel.rows), (svd.right, sel.cols)):
        block = basis[idx, :]
        if block.shape[0] < r or r == 0:
            out.append(0.0)
        else:
            out.append(float(np.linalg.svd(block, compute_uv=False)[-1]))
    return tuple(out)


def is_admissible(svd, sel, tol=DEFAULT_ADMISSIBILITY_TOL):
    """True iff ``S^T U`` and ``V^T P`` both have numerical rank ``r``."""
    su, vp = sampled_singular_values(svd, sel)
    return su >= tol and vp >= tol


def leverage_selection(svd, s, c):
    """Top-``s`` row and top-``c`` column leverage-score selection."""
    rows = top_k_selection(leverage_scores(svd.left), s)
    cols = top_k_selection(leverage_scores(svd.right), c)
    m, n = svd.shape
    return SelectionPair(rows, cols, m, n)
