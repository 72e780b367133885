import numpy as np
import pytest

from conftest import random_density, random_hermitian
from seqbell import matrixcore as mc
from seqbell.errors import DimensionError, NumericalConsistencyError, SizeLimitError

SX, SY, SZ, I2 = mc.SIGMA_X, mc.SIGMA_Y, mc.SIGMA_Z, mc.I2


def test_kron_identity():
    assert np.array_equal(mc.kron(I2, I2), np.eye(4))


def test_kron_antidiagonal_entry():
    assert mc.kron(SX, SX)[0, 3] == 1


def test_pauli_tensor_squares_to_identity():
    m = mc.kron(SX, SY)
    assert mc.frobenius_distance(m @ m, np.eye(4)) < 1e-12


def test_kron_cap():
    with pytest.raises(SizeLimitError):
        mc.kron(np.eye(64), np.eye(128))
    assert mc.kron(np.eye(2), np.eye(4), cap=8).shape == (8, 8)


def test_kron_associative_on_paulis():
    paulis = [I2, SX, SY, SZ]
    for a in paulis:
        for b in paulis:
            for c in paulis:
                assert np.array_equal(mc.kron(mc.kron(a, b), c), mc.kron(a, mc.kron(b, c)))


def test_partial_trace_identity():
    assert mc.frobenius_distance(mc.partial_trace_first(np.eye(4), 2), 2 * I2) == 0


def test_partial_trace_bell_marginal():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    out = mc.partial_trace_first(np.outer(phi, phi), 2)
    assert mc.frobenius_distance(out, I2 / 2) < 1e-12


def test_partial_trace_preserves_trace(rng):
    for dim_a, dim_b in [(2, 2), (2, 4), (4, 2), (3, 5)]:
        m = random_hermitian(rng, dim_a * dim_b)
        assert abs(np.trace(mc.partial_trace_first(m, dim_a)) - np.trace(m)) < 1e-10


def test_partial_trace_of_product(rng):
    for dim_a, dim_b in [(2, 2), (2, 4), (4, 4)]:
        a = random_hermitian(rng, dim_a)
        b = random_hermitian(rng, dim_b)
        got = mc.partial_trace_first(mc.kron(a, b), dim_a)
        assert mc.frobenius_distance(got, np.trace(a) * b) < 1e-9


def test_partial_trace_bad_dims():
    with pytest.raises(DimensionError):
        mc.partial_trace_first(np.eye(6), 4)


def test_expectation_examples():
    assert mc.expectation(I2 / 2, SZ) == 0
    assert mc.expectation(np.diag([1, 0]), SZ) == 1
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert abs(mc.expectation(np.outer(phi, phi), mc.kron(SX, SX)) - 1) < 1e-12


def test_expectation_rejects_imaginary_residue():
    with pytest.raises(NumericalConsistencyError):
        mc.expectation(np.diag([1, 0]), np.array([[1j, 0], [0, 0]]))


def test_expectation_linear(rng):
    rho = random_density(rng, 4)
    a, b = random_hermitian(rng, 4), random_hermitian(rng, 4)
    lhs = mc.expectation(rho, 2.5 * a - 0.7 * b)
    rhs = 2.5 * mc.expectation(rho, a) - 0.7 * mc.expectation(rho, b)
    assert abs(lhs - rhs) < 1e-12


def test_frobenius_distance(rng):
    m = random_hermitian(rng, 3)
    assert mc.frobenius_distance(m, m) == 0
    assert abs(mc.frobenius_distance(I2, np.zeros((2, 2))) - np.sqrt(2)) < 1e-15
    a, b = random_hermitian(rng, 4), random_hermitian(rng, 4)
    assert mc.frobenius_distance(a, b) == mc.frobenius_distance(b, a)
    with pytest.raises(DimensionError):
        mc.frobenius_distance(I2, np.eye(3))


def test_apply_local_matches_kron(rng):
    rho = random_density(rng, 8)
    op = random_hermitian(rng, 4) + 1j * random_hermitian(rng, 4)
    full = mc.kron(np.eye(2), op)
    want = full @ rho @ full.conj().T
    assert mc.frobenius_distance(mc.apply_local(rho, op, 2), want) < 1e-12
