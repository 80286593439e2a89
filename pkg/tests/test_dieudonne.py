from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cryptoherm.banded import BandedSymmetricMatrix, linear_combination
from cryptoherm.errors import DimensionError, NormalizationError, StructureError
from cryptoherm.dieudonne import (
    band_nullspace,
    dieudonne_commutator,
    dieudonne_residual,
    nullspace_dimension,
    reduce_to_normal_form,
    solve_band_pseudometrics,
    solve_general_metric,
)
from cryptoherm.model import ModelParams, TridiagonalHamiltonian, build_laguerre_hamiltonian

nonzero = st.fractions(min_value=-9, max_value=9, max_denominator=7).filter(lambda x: x != 0)
any_q = st.fractions(min_value=-9, max_value=9, max_denominator=7)


def test_identity_symmetric_h():
    S = TridiagonalHamiltonian([Fraction(x) for x in (1, 2, 3, 4)], [Fraction(x) for x in (5, 6, 7)],
                               [Fraction(x) for x in (5, 6, 7)])
    P0 = solve_band_pseudometrics(S, 0).P[0]
    assert P0.to_dense().tolist() == np.eye(4, dtype=int).tolist()


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 7), data=st.data())
def test_general_tridiagonal_recurrence(n, data):
    # for any H with nonzero off-diagonals the diagonal solution is theta_{m+1} = theta_m c_m / b_{m+1}
    diag = data.draw(st.lists(any_q, min_size=n, max_size=n))
    sup = data.draw(st.lists(nonzero, min_size=n - 1, max_size=n - 1))
    sub = data.draw(st.lists(nonzero, min_size=n - 1, max_size=n - 1))
    H = TridiagonalHamiltonian(diag, sup, sub)
    P0 = solve_band_pseudometrics(H, 0).P[0]
    expected = [Fraction(1)]
    for m in range(n - 1):
        expected.append(expected[-1] * sup[m] / sub[m])
    assert list(P0.bands[0]) == expected
    assert dieudonne_residual(H, P0) == 0


@settings(max_examples=20, deadline=None)
@given(n=st.integers(3, 7), x=any_q, y=any_q)
def test_residual_linear(n, x, y):
    H = build_laguerre_hamiltonian(ModelParams(n, Fraction(3, 2)))
    rng = np.random.default_rng(n)
    A = BandedSymmetricMatrix.from_dense(np.array([[Fraction(int(v)) for v in row] for row in rng.integers(-5, 5, (n, n))], dtype=object), 1)
    B = BandedSymmetricMatrix.from_dense(np.array([[Fraction(int(v)) for v in row] for row in rng.integers(-5, 5, (n, n))], dtype=object), 1)
    lhs = dieudonne_commutator(H, linear_combination([x, y], [A, B]))
    rhs = x * dieudonne_commutator(H, A) + y * dieudonne_commutator(H, B)
    assert lhs.tolist() == rhs.tolist()


def test_commutator_antisymmetric():
    H = build_laguerre_hamiltonian(ModelParams(6, Fraction(2)))
    rng = np.random.default_rng(0)
    T = rng.integers(-4, 4, (6, 6))
    T = T + T.T
    C = dieudonne_commutator(H, BandedSymmetricMatrix.from_dense(np.array(T, dtype=object) * Fraction(1), 2))
    assert (C + C.T == 0).all()


def test_residual_float_and_exact_agree():
    params = ModelParams(7, Fraction(2))
    P = solve_band_pseudometrics(params, 2).P[2]
    assert dieudonne_residual(build_laguerre_hamiltonian(params), P) == 0
    Hf = build_laguerre_hamiltonian(params.as_float())
    assert dieudonne_residual(Hf, P.to_float()) < 1e-12


def test_nullspace_dimension_k_plus_one():
    for k in range(4):
        H = build_laguerre_hamiltonian(ModelParams(k + 3, Fraction(7, 3)))
        assert nullspace_dimension(H, k) == k + 1


def test_normal_form_idempotent_and_basis_free():
    H = build_laguerre_hamiltonian(ModelParams(7, Fraction(1)))
    basis = band_nullspace(H, 2)
    normal = reduce_to_normal_form(basis)
    again = reduce_to_normal_form(normal)
    assert [m.to_dense().tolist() for m in normal] == [m.to_dense().tolist() for m in again]
    mixed = [linear_combination([1, 2, 3], basis), linear_combination([0, 1, -1], basis), basis[2]]
    assert [m.to_dense().tolist() for m in reduce_to_normal_form(mixed)] == [m.to_dense().tolist() for m in normal]
    for j, m in enumerate(normal):
        assert [m.element(1, c) for c in range(1, 4)] == [int(c == j + 1) for c in range(1, 4)]


def test_normal_form_singular():
    z = BandedSymmetricMatrix.from_elements(3, 1, {(2, 2): Fraction(1)})
    with pytest.raises(NormalizationError):
        reduce_to_normal_form([z, z])
    with pytest.raises(NormalizationError):
        reduce_to_normal_form([])


def test_structure_error_zero_coupling():
    # a decoupled H has a larger nullspace than k + 1
    H = TridiagonalHamiltonian([Fraction(x) for x in (1, 2, 3, 4)], [Fraction(1), Fraction(0), Fraction(1)],
                               [Fraction(2), Fraction(0), Fraction(3)])
    with pytest.raises(StructureError):
        solve_band_pseudometrics(H, 1)


def test_dimension_errors():
    H = build_laguerre_hamiltonian(ModelParams(3, Fraction(1)))
    with pytest.raises(DimensionError):
        band_nullspace(H, 3)
    with pytest.raises(DimensionError):
        solve_general_metric(H, 1, ())
    with pytest.raises(DimensionError):
        dieudonne_residual(H, BandedSymmetricMatrix.zeros(4, 0))


def test_float_h_round_trips_through_exact():
    P = solve_band_pseudometrics(build_laguerre_hamiltonian(ModelParams(5, 1.0)), 1).P
    assert P[1].to_dense().dtype == float
    assert P[1].element(2, 2) == pytest.approx(-1.0)


def test_general_metric_combination():
    params = ModelParams(5, Fraction(1))
    theta = solve_general_metric(params, 2, (Fraction(1, 10), Fraction(1, 50)))
    assert dieudonne_residual(build_laguerre_hamiltonian(params), theta) == 0
    assert theta.element(1, 2) == Fraction(1, 10)


def test_to_json():
    data = solve_band_pseudometrics(ModelParams(4, Fraction(5, 2)), 1).to_json()
    assert data["N"] == 4 and data["a"] == "5/2" and data["k"] == 1
    assert [p["j"] for p in data["P"]] == [0, 1]
