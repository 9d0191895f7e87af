"""
Dense matrix primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype float64. Everything in
this module is a pure function of its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

DEFAULT_REL_TOL = 1e-10


def as_matrix(A, name="A"):
    """Return ``A`` as a finite 2-D float64 array or raise InvalidInputError."""
    try:
        arr = np.asarray(A, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name} is not convertible to a float matrix") from exc
    if arr.ndim != 2:
        raise InvalidInputError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidInputError(f"{name} must have positive dimensions, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return arr


@dataclass(frozen=True)
class CompactSVD:
    """Compact SVD ``left @ diag(sigmas) @ right.T``.

    Attributes
    ----------
    left : ndarray, shape (m, k)
        Orthonormal left singular vectors.
    sigmas : ndarray, shape (k,)
        Positive, non-increasing singular values.
    right : ndarray, shape (n, k)
        Orthonormal right singular vectors.
    """

    left: np.ndarray
    sigmas: np.ndarray
    right: np.ndarray

    @property
    def rank(self):
        return self.sigmas.shape[0]

    @property
    def shape(self):
        return (self.left.shape[0], self.right.shape[0])

    def reconstruct(self):
        return (self.left * self.sigmas) @ self.right.T

    def truncated(self, r):
        """The leading ``r`` triplets."""
        if not 1 <= r <= self.rank:
            raise InvalidInputError(f"rank {r} outside [1, {self.rank}]")
        return CompactSVD(self.left[:, :r], self.sigmas[:r], self.right[:, :r])


def _svd(A):
    # Sign convention: the largest-magnitude entry of each left vector is >= 0.
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    idx = np.argmax(np.abs(U), axis=0)
    signs = np.where(U[idx, np.arange(U.shape[1])] < 0, -1.0, 1.0)
    return U * signs, s, Vt.T * signs


def compact_svd(A, rel_tol=DEFAULT_REL_TOL):
    """Compact SVD keeping singular values above ``rel_tol * sigma_max(A)``.

    A zero matrix yields an SVD with ``k = 0`` factors.
    """
    A = as_matrix(A)
    if not 0.0 < rel_tol < 1.0:
        raise InvalidInputError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    U, s, V = _svd(A)
    k = int(np.count_nonzero(s > rel_tol * s[0])) if s[0] > 0 else 0
    return CompactSVD(U[:, :k], s[:k], V[:, :k])


def _check_rank(A, r):
    if not isinstance(r, (int, np.integer)) or not 1 <= r <= min(A.shape):
        raise InvalidInputError(f"r must be an integer in [1, {min(A.shape)}], got {r!r}")


def truncate_rank(A, r):
    """Best rank-``r`` approximation of ``A`` (Eckart-Young).

    Singular value ties at the cut are resolved by the order LAPACK returns.
    """
    A = as_matrix(A)
    _check_rank(A, r)
    U, s, V = _svd(A)
    return (U[:, :r] * s[:r]) @ V[:, :r].T


def pinv(A, rel_tol=DEFAULT_REL_TOL):
    """Moore-Penrose pseudoinverse, discarding singular values below ``rel_tol * sigma_max``."""
    A = as_matrix(A)
    f = compact_svd(A, rel_tol)
    return (f.right / f.sigmas) @ f.left.T


def pinv_truncated(A, r, rel_tol=DEFAULT_REL_TOL):
    """Pseudoinverse of ``truncate_rank(A, r)``.

    Takes the SVD of ``A``, keeps the ``r`` largest singular values and inverts
    only those. Retained values that are numerically zero (below
    ``rel_tol * sigma_max``) are dropped, exactly as ``pinv`` would drop them.
    """
    A = as_matrix(A)
    _check_rank(A, r)
    U, s, V = _svd(A)
    keep = s[:r] > rel_tol * s[0] if s[0] > 0 else np.zeros(r, dtype=bool)
    k = int(np.count_nonzero(keep))
    return (V[:, :k] / s[:k]) @ U[:, :k].T


def spectral_norm(A):
    return float(np.linalg.norm(as_matrix(A), 2))


def fro_norm(A):
    return float(np.linalg.norm(as_matrix(A), "fro"))


def gaussian_matrix(m, n, seed):
    """An ``m x n`` matrix of i.i.d. N(0, 1) entries, reproducible per seed."""
    if m < 1 or n < 1:
        raise InvalidInputError(f"dimensions must be positive, got ({m}, {n})")
    rng = np.random.default_rng(int(seed) % 2**64)
    return rng.standard_normal((m, n))


def orthonormalize_gaussian(m, r, seed):
    """Orthonormal basis of the columns of ``gaussian_matrix(m, r, seed)``."""
    if not 1 <= r <= m:
        raise InvalidInputError(f"need 1 <= r <= m, got r={r}, m={m}")
    Q, R = np.linalg.qr(gaussian_matrix(m, r, seed))
    # fix the QR sign ambiguity so the basis is a function of the seed alone
    d = np.sign(np.diag(R))
    d[d == 0] = 1.0
    return Q * d
