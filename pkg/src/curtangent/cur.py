"""Fixed-index CUR maps: the ordinary one and the rank-truncated one."""

from __future__ import annotations

import numpy as np

from .dense import DEFAULT_REL_TOL, as_matrix, pinv, pinv_truncated
from .errors import InvalidInputError
from .sampling import SelectionPair


def _factors(A, sel: SelectionPair):
    A = as_matrix(A)
    if A.shape != (sel.m, sel.n):
        raise InvalidInputError(f"matrix shape {A.shape} does not match selection ({sel.m}, {sel.n})")
    C = A[:, sel.cols]
    R = A[sel.rows, :]
    W = R[:, sel.cols]
    return C, W, R


def cur(A, sel, rel_tol=DEFAULT_REL_TOL):
    """Ordinary CUR map ``A P pinv(S^T A P) S^T A``.

    Not smooth where the rank of the intersection changes; kept for contrast
    with :func:`cur_rank_truncated`.
    """
    C, W, R = _factors(A, sel)
    return C @ (pinv(W, rel_tol) @ R)


def cur_rank_truncated(A, sel, r):
    """Rank-truncated CUR map ``A P pinv((S^T A P)_r) S^T A``."""
    C, W, R = _factors(A, sel)
    if not isinstance(r, (int, np.integer)) or not 1 <= r <= min(W.shape):
        raise InvalidInputError(f"r must lie in [1, min(s, c)] = [1, {min(W.shape)}], got {r!r}")
    return C @ (pinv_truncated(W, r) @ R)
