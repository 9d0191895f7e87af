import numpy as np
import pytest

from curtangent.dense import gaussian_matrix
from curtangent.errors import DegenerateInputError, InvalidInputError
from curtangent.perturb import (
    PerturbationSpec,
    generic_perturbation,
    invisible_perturbation,
    normal_perturbation,
    visible_components,
    visible_perturbation,
)
from curtangent.sampling import SelectionPair
from curtangent.tangent import oblique_tangent_project, orthogonal_tangent_project

from conftest import problem


def test_generic_unit_and_deterministic():
    E = generic_perturbation(80, 70, 4)
    assert np.linalg.norm(E) == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_array_equal(E, generic_perturbation(80, 70, 4))
    G = gaussian_matrix(80, 70, 4)
    np.testing.assert_allclose(E * np.linalg.norm(G), G, rtol=1e-12)
    assert abs(G.mean()) <= 4 / np.sqrt(G.size) and abs(G.var() - 1) <= 0.1


def test_invisible_exact_zeros(default_problem):
    svd, sel, tp = default_problem
    E = invisible_perturbation(sel, 80, 70, 5)
    assert np.linalg.norm(E) == pytest.approx(1.0, abs=1e-12)
    assert np.all(E[sel.rows, :] == 0.0)
    assert np.all(E[:, sel.cols] == 0.0)
    assert np.all(oblique_tangent_project(tp, E) == 0.0)


def test_invisible_degenerate():
    with pytest.raises(DegenerateInputError):
        invisible_perturbation(SelectionPair(range(3), [0], 3, 4), 3, 4, 0)
    with pytest.raises(InvalidInputError):
        invisible_perturbation(SelectionPair([0], [0], 3, 4), 4, 4, 0)


@pytest.mark.parametrize("seed", range(5))
def test_normal_family(seed):
    svd, _, tp = problem(seed)
    E = normal_perturbation(svd, seed + 3)
    assert np.linalg.norm(E) == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.norm(orthogonal_tangent_project(svd, E)) <= 1e-12
    assert np.linalg.norm(svd.left @ (svd.left.T @ E)) <= 1e-12
    assert np.linalg.norm((E @ svd.right) @ svd.right.T) <= 1e-12
    assert np.linalg.norm(oblique_tangent_project(tp, E)) > 1e-3


def test_normal_degenerate(example_m):
    from curtangent.dense import compact_svd

    with pytest.raises(DegenerateInputError):
        normal_perturbation(compact_svd(np.eye(3)), 0)


def test_visible_components_orthogonal(default_problem):
    _, sel, _ = default_problem
    inv, vis = visible_components(sel, 80, 70, 8)
    assert abs(np.sum(inv * vis)) <= 1e-12
    assert np.linalg.norm(inv) == pytest.approx(1.0) and np.linalg.norm(vis) == pytest.approx(1.0)


def test_visible_limits(default_problem):
    _, sel, _ = default_problem
    inv, vis = visible_components(sel, 80, 70, 8)
    for alpha in (1e-3, 1e-2, 1e-1):
        E = visible_perturbation(sel, 80, 70, alpha, 8)
        assert np.linalg.norm(E) == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.norm(E - inv) <= 2 * alpha
    assert np.linalg.norm(visible_perturbation(sel, 80, 70, 1e6, 8) - vis) <= 1e-5
    with pytest.raises(InvalidInputError):
        visible_perturbation(sel, 80, 70, 0.0, 8)


def test_spec_dispatch(default_problem):
    svd, sel, _ = default_problem
    np.testing.assert_array_equal(PerturbationSpec("generic", 3).generate(svd, sel), generic_perturbation(80, 70, 3))
    np.testing.assert_array_equal(
        PerturbationSpec("visible", 3, alpha=0.5).generate(svd, sel), visible_perturbation(sel, 80, 70, 0.5, 3)
    )
    with pytest.raises(InvalidInputError):
        PerturbationSpec("visible", 3)
    with pytest.raises(InvalidInputError):
        PerturbationSpec("adversarial", 3)
