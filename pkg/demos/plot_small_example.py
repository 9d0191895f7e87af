"""
CUR versus SVD on a 3x3 rank-one matrix
=======================================

A rank-one matrix, one sampled row and column, and a perturbation that
touches only the bottom-right entry. CUR never sees the perturbation, so it
recovers the matrix exactly at any size. SVD truncation mixes it back in.
"""

import numpy as np

from curtangent import SelectionPair, compact_svd, cur_rank_truncated, truncate_rank

M = np.full((3, 3), 1.0 / 3.0)
E = np.zeros((3, 3))
E[2, 2] = 1.0
sel = SelectionPair([0], [0], 3, 3)

svd = compact_svd(M)
print("sigma_1(M) =", svd.sigmas[0])

# CUR reads only row 0 and column 0, where E is zero.
for eps in (1e-3, 2.0 / 3.0, 10.0):
    err = np.linalg.norm(cur_rank_truncated(M + eps * E, sel, 1) - M)
    print(f"CUR error at eps={eps:g}: {err:.3e}")

# The best rank-one approximation of M + (2/3) E is not M.
A1 = truncate_rank(M + (2.0 / 3.0) * E, 1)
print(np.round(A1 * 9, 12), "/ 9")
print("SVD error:", np.linalg.norm(A1 - M), "vs sqrt(33)/9 =", np.sqrt(33) / 9)
