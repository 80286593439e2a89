from fractions import Fraction

import numpy as np
import pytest

from cryptoherm.analysis import (
    analysis_report,
    dyson_first_order,
    dyson_sqrt,
    evolve,
    find_alpha_boundary,
    hermitian_image,
    hidden_conjugate,
    off_tridiagonal_mass,
    position_operator,
    reconstruct_metric,
    spectral_decompose,
)
from cryptoherm.closed_forms import assemble_metric
from cryptoherm.errors import DimensionError, DomainError, ReconstructionError
from cryptoherm.model import ModelParams, build_laguerre_hamiltonian
from cryptoherm.spectrum import compute_spectrum, spectral_data

BOUNDARY_PLUS = {4: 0.1117, 5: 0.0816, 6: 0.0639, 7: 0.0524, 8: 0.0443}
BOUNDARY_MINUS = {4: 0.796, 5: 0.723, 6: 0.679, 7: 0.650, 8: 0.629}


@pytest.mark.parametrize("N", sorted(BOUNDARY_PLUS))
def test_alpha_boundary_values(N):
    params = ModelParams(N, 1.0)
    assert find_alpha_boundary(params, 1, (1.0,)).alpha_max == pytest.approx(BOUNDARY_PLUS[N], abs=1e-4)
    assert find_alpha_boundary(params, 1, (-1.0,)).alpha_max == pytest.approx(BOUNDARY_MINUS[N], abs=1e-3)


def test_alpha_boundary_scale_invariant_direction():
    params = ModelParams(6, 2.0)
    b1 = find_alpha_boundary(params, 2, (1.0, 1.0))
    b2 = find_alpha_boundary(params, 2, (5.0, 5.0))
    assert b1.alpha_max == pytest.approx(b2.alpha_max, rel=1e-9)
    assert np.linalg.norm(b1.direction) == pytest.approx(1.0)


def test_alpha_boundary_oracle_source():
    params = ModelParams(6, 1.0)
    assert find_alpha_boundary(params, 1, (1.0,), source="oracle").alpha_max == pytest.approx(
        find_alpha_boundary(params, 1, (1.0,)).alpha_max, rel=1e-9
    )


def test_alpha_boundary_k0_and_errors():
    params = ModelParams(5, 1.0)
    assert find_alpha_boundary(params, 0).capped
    with pytest.raises(DimensionError):
        find_alpha_boundary(params, 2, (1.0,))
    with pytest.raises(DimensionError):
        find_alpha_boundary(params, 1, (0.0,))


def test_alpha_boundary_shrinks_with_n():
    vals = [find_alpha_boundary(ModelParams(N, 1.0), 1, (1.0,)).alpha_max for N in range(4, 12)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_sqrt_rejects_indefinite():
    theta = assemble_metric(ModelParams(4, 1.0), 1, (10.0,)).theta
    with pytest.raises(DomainError):
        dyson_sqrt(theta)


def test_hidden_conjugate_exact_equals_h():
    params = ModelParams(5, Fraction(2))
    H = build_laguerre_hamiltonian(params)
    theta = assemble_metric(params, 2, (Fraction(1, 20), Fraction(1, 100))).theta
    assert hidden_conjugate(H, theta).tolist() == H.to_dense().tolist()


def test_hidden_conjugate_float():
    params = ModelParams(6, 1.5)
    H = build_laguerre_hamiltonian(params)
    theta = assemble_metric(params, 1, (0.02,)).theta
    assert np.allclose(hidden_conjugate(H, theta), H.to_dense(), atol=1e-10)


def test_hermitian_image_first_order_is_nearly_symmetric():
    params = ModelParams(6, 1.0)
    H = build_laguerre_hamiltonian(params)
    asym = []
    for alpha in (0.02, 0.01):
        h = hermitian_image(H, dyson_first_order(params, alpha))
        asym.append(np.linalg.norm(h - h.T))
    assert asym[1] < asym[0]


def test_position_operator():
    theta = assemble_metric(ModelParams(5, 1.0), 1, (0.05,)).theta
    dy = dyson_sqrt(theta)
    pos = position_operator(dy)
    assert np.allclose(np.sort(np.linalg.eigvals(pos.Q).real), np.arange(1, 6))
    for s in range(5):
        assert np.allclose(pos.Q @ pos.chi[:, s], (s + 1) * pos.chi[:, s])
    assert off_tridiagonal_mass(np.eye(4)) == 0.0
    assert off_tridiagonal_mass(pos.Q) > 0
    with pytest.raises(DomainError):
        position_operator(dy, [1, 3, 2, 4, 5])
    with pytest.raises(DimensionError):
        position_operator(dy, [1, 2])


def test_spectral_decompose_rejects_non_solution():
    params = ModelParams(5, 1.0)
    with pytest.raises(ReconstructionError):
        spectral_decompose(np.eye(5) + 0.1 * np.ones((5, 5)), spectral_data(params))


def test_kappa2_of_diagonal_metric():
    # Theta_0 = sum_n xi_n xi_n^T / t_n, so kappa_n^2 = 1 / t_n
    params = ModelParams(7, 2.0)
    sd = spectral_data(params)
    k2 = spectral_decompose(assemble_metric(params, 0).theta, sd)
    assert np.allclose(k2, 1.0 / sd.pairings, rtol=1e-10)
    assert np.allclose(reconstruct_metric(k2, sd), np.diag(assemble_metric(params, 0).theta.to_dense().diagonal()))


def test_evolution_solves_schrodinger():
    params = ModelParams(5, 1.0)
    theta = assemble_metric(params, 1, (0.05,)).theta
    H = build_laguerre_hamiltonian(params).to_dense()
    dt = 1e-5
    res = evolve(params, theta, [1, 0, 0, 0, 0], [0.3, 0.3 + dt])
    deriv = (res.states[1] - res.states[0]) / dt
    assert np.allclose(1j * deriv, H @ res.states[0], rtol=1e-3, atol=1e-3)
    assert np.allclose(res.states[0], evolve(params, theta, [1, 0, 0, 0, 0], [0.3]).states[0])


def test_evolution_initial_state_recovered():
    params = ModelParams(6, 2.0)
    init = np.array([0.3, -1.0, 0.2, 0.0, 0.5, 0.1])
    res = evolve(params, assemble_metric(params, 0).theta, init, [0.0])
    assert np.allclose(res.states[0], init, atol=1e-10)


def test_evolution_errors():
    params = ModelParams(4, 1.0)
    bad = assemble_metric(params, 1, (10.0,)).theta
    good = assemble_metric(params, 0).theta
    with pytest.raises(DomainError):
        evolve(params, bad, [1, 0, 0, 0], [0.0])
    with pytest.raises(DimensionError):
        evolve(params, good, [1, 0], [0.0])
    with pytest.raises(DomainError):
        evolve(params, good, [0, 0, 0, 0], [0.0])


def test_analysis_report():
    rep = analysis_report(ModelParams(6, 1.0), 1, (0.02,), rays=[(1.0,), (-1.0,)])
    assert rep["positivity"] == "positive-definite"
    assert rep["alpha_max"][0] == pytest.approx(0.0639, abs=1e-4)
    assert all(x > 0 for x in rep["kappa2"])
    assert len(rep["kappa2"]) == 6


def test_isospectral_for_several_members():
    for N, a, k, alphas in [(5, 1.0, 2, (0.01, 0.001)), (8, 3.0, 3, (0.01, 0.0, 0.0))]:
        params = ModelParams(N, a)
        fam = assemble_metric(params, k, alphas)
        assert fam.positivity == "positive-definite"
        h = hermitian_image(build_laguerre_hamiltonian(params), dyson_sqrt(fam.theta))
        assert np.allclose(h, h.T, atol=1e-9 * np.linalg.norm(h))
        assert np.allclose(np.linalg.eigvalsh(0.5 * (h + h.T)), compute_spectrum(params), rtol=1e-9)
