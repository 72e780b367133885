import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_density
from seqbell import measurement as ms
from seqbell.errors import ParameterError
from seqbell.matrixcore import SIGMA_X, SIGMA_Z, frobenius_distance, identity, kron
from seqbell.observables import bob_observables

valid_params = st.floats(0.01, 1.0).flatmap(
    lambda eta: st.tuples(st.just(eta), st.floats(-(1 - eta), 1 - eta))
)


def test_sharp_limit_is_projective():
    pair = ms.effects(ms.PovmParams(1.0, 0.0), SIGMA_Z)
    assert frobenius_distance(pair.plus, np.diag([1, 0])) < 1e-15
    assert frobenius_distance(pair.minus, np.diag([0, 1])) < 1e-15


def test_half_sharp_effect():
    pair = ms.effects(ms.PovmParams(0.5, 0.0), SIGMA_Z)
    assert frobenius_distance(pair.plus, np.diag([0.75, 0.25])) < 1e-15


@given(valid_params)
def test_effect_algebra(p):
    eta, alpha = p
    params = ms.PovmParams(eta, alpha)
    b = SIGMA_X
    pair = ms.effects(params, b)
    assert frobenius_distance(pair.plus + pair.minus, identity(2)) < 1e-12
    assert frobenius_distance(pair.plus - pair.minus, alpha * identity(2) + eta * b) < 1e-12
    assert frobenius_distance(pair.sqrt_plus @ pair.sqrt_plus, pair.plus) < 1e-12
    assert frobenius_distance(pair.sqrt_minus @ pair.sqrt_minus, pair.minus) < 1e-12
    assert np.linalg.eigvalsh(pair.plus).min() >= -1e-12
    assert np.linalg.eigvalsh(pair.minus).min() >= -1e-12


@pytest.mark.parametrize("eta,alpha", [(0.0, 0.0), (1.2, 0.0), (0.6, 0.5), (0.5, -0.6)])
def test_invalid_params(eta, alpha):
    with pytest.raises(ParameterError):
        ms.PovmParams(eta, alpha)


def test_xi_examples():
    for eta in (0.1, 0.5, 0.9):
        assert abs(ms.xi(ms.PovmParams(eta)) - math.sqrt(1 - eta**2)) < 1e-15
    assert ms.xi(ms.PovmParams(1.0)) == 0.0
    # (sqrt(1.18^2 - 0.5774^2) + sqrt(0.82^2 - 0.5774^2)) / 2
    assert abs(ms.xi(ms.PovmParams(0.5774, 0.18)) - 0.8056633730013132) < 1e-12


def test_gamma_examples():
    assert abs(ms.gamma(2, ms.PovmParams(1 / math.sqrt(2))) - (1 + math.sqrt(0.5)) / 2) < 1e-15
    for n in (2, 3, 7):
        assert abs(ms.gamma(n, ms.PovmParams(1.0)) - 1 / n) < 1e-15
    assert abs(ms.gamma(3, ms.PovmParams(1 / math.sqrt(3))) - 0.8776643872851505) < 1e-12


@given(valid_params)
def test_xi_even_in_alpha(p):
    eta, alpha = p
    assert abs(ms.xi(ms.PovmParams(eta, alpha)) - ms.xi(ms.PovmParams(eta, -alpha))) < 1e-14


@given(st.floats(0.0, 0.5), st.floats(0.01, 0.49), st.floats(0.01, 0.49))
def test_xi_decreasing_in_eta(alpha, e1, e2):
    lo, hi = sorted((e1, e2))
    if hi - lo < 1e-9:
        return
    assert ms.xi(ms.PovmParams(lo, alpha)) >= ms.xi(ms.PovmParams(hi, alpha))


def test_gamma_increasing_in_xi():
    etas = np.linspace(0.99, 0.01, 40)
    gs = [ms.gamma(4, ms.PovmParams(e)) for e in etas]
    assert all(b > a for a, b in zip(gs, gs[1:]))


def test_luders_sharp_limit(rng):
    rho = random_density(rng, 4)
    pair = ms.effects(ms.PovmParams.sharp(), SIGMA_Z)
    assert frobenius_distance(ms.luders_update(rho, pair, 2), ms.dephase(rho, SIGMA_Z, 2)) < 1e-12


def test_luders_weak_limit(rng):
    rho = random_density(rng, 4)
    pair = ms.effects(ms.PovmParams(1e-9, 0.3), SIGMA_X)
    assert frobenius_distance(ms.luders_update(rho, pair, 2), rho) < 1e-8


@settings(max_examples=40)
@given(valid_params, st.integers(0, 10_000))
def test_luders_trace_and_decomposition(p, seed):
    eta, alpha = p
    params = ms.PovmParams(eta, alpha)
    rng = np.random.default_rng(seed)
    b = bob_observables(4)[2]
    rho = random_density(rng, 16)
    out = ms.luders_update(rho, ms.effects(params, b), 4)
    assert abs(np.trace(out) - np.trace(rho)) < 1e-12
    assert np.linalg.eigvalsh((out + out.conj().T) / 2).min() > -1e-12
    x = ms.xi(params)
    want = x * rho + (1 - x) * ms.dephase(rho, b, 4)
    assert frobenius_distance(out, want) < 1e-9
