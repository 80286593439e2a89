from fractions import Fraction

import numpy as np
import pytest

from cryptoherm.banded import BandedSymmetricMatrix
from cryptoherm.closed_forms import assemble_metric
from cryptoherm.model import ModelParams
from cryptoherm.positivity import INDEFINITE, PD, check_positive_definite, cholesky_from_ldlt


def test_exact_pd_and_cholesky():
    theta = assemble_metric(ModelParams(5, 1), 1, (Fraction(1, 20),)).theta
    res = check_positive_definite(theta)
    assert res.is_pd and res.status == PD
    C = cholesky_from_ldlt(res, 5).astype(float)
    assert np.allclose(C @ C.T, theta.to_float().to_dense())


def test_exact_indefinite_witness():
    theta = assemble_metric(ModelParams(4, 1), 1, (10,)).theta
    res = check_positive_definite(theta)
    assert res.status == INDEFINITE
    v = res.direction
    T = theta.to_dense()
    quad = sum(v[i] * T[i, j] * v[j] for i in range(4) for j in range(4))
    assert quad <= 0
    assert quad == res.pivots[res.pivot_index]


def test_float_witness():
    theta = assemble_metric(ModelParams(6, 1.0), 1, (5.0,)).theta
    res = check_positive_definite(theta)
    assert res.status == INDEFINITE
    v = res.direction
    assert v @ theta.to_dense() @ v <= 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_agrees_with_dense_eigenvalues(seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(7, 7))
    A = A + A.T + rng.uniform(0, 8) * np.eye(7)
    B = BandedSymmetricMatrix.from_dense(A * (np.abs(np.subtract.outer(range(7), range(7))) <= 2), 2)
    expected = np.linalg.eigvalsh(B.to_dense())[0] > 0
    assert check_positive_definite(B).is_pd == expected


def test_singular_is_not_pd():
    B = BandedSymmetricMatrix.from_dense(np.array([[1.0, 1.0], [1.0, 1.0]]), 1)
    assert not check_positive_definite(B).is_pd
