"""
Oblique and orthogonal tangent projectors
=========================================

The derivative of rank-truncated CUR at a rank-r matrix is an oblique
projector onto the tangent space. This script checks its projector
properties on one leverage-sampled problem and measures how far it is from
the orthogonal projector that governs SVD truncation.
"""

import numpy as np

from curtangent import (
    ExperimentConfig,
    SelectionPair,
    build_test_problem,
    comparison_gap,
    generic_perturbation,
    make_tangent_point,
    obliqueness,
    oblique_tangent_project,
    orthogonal_tangent_project,
)

svd, sel, tp = build_test_problem(ExperimentConfig(seed=0))
m, n = tp.shape
print(f"{m}x{n} rank {tp.rank}, sampled rows {sel.rows.tolist()}")
print(f"sampled cols {sel.cols.tolist()}")

E = generic_perturbation(m, n, 1)
IE = oblique_tangent_project(tp, E)
print("idempotence error:", np.linalg.norm(oblique_tangent_project(tp, IE) - IE))

###############################################################################
# Obliqueness is measured by how far each oblique factor is from orthogonal.
du, dv, npv = obliqueness(tp)
print(f"delta_U = {du:.3f}, delta_V = {dv:.3f}, ||Pi_V||_2 = {npv:.3f}")

lhs, rhs = comparison_gap(tp, E)
print(f"||I(E) - P_T(E)||_2 = {lhs:.3e} <= {rhs:.3e}")

###############################################################################
# Sampling every row and column makes the two projectors coincide.
full = make_tangent_point(svd, SelectionPair.full(m, n))
gap = np.linalg.norm(oblique_tangent_project(full, E) - orthogonal_tangent_project(svd, E), 2)
print("full selection gap:", gap)
