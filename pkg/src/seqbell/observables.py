"""Optimal observables, the maximally entangled state and steered states.

Bob's n observables are mutually anticommuting +/-1 observables on
dimension 2^(n//2), generated by the even/odd recursion seeded with
(sx, sy) for n = 2 and (sx, sy, sz) for n = 3.

Alice's i-th observable is (1/sqrt n) * sum_y (-1)^{x^i_y} B_y^T. The
transpose is what makes the optimality condition hold on the state
|phi> = sum_k |kk>/sqrt d, because (A (x) I)|phi> = (I (x) A^T)|phi>.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import combinatorics as comb
from .errors import NoConstraintsError, SizeLimitError
from .matrixcore import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    frobenius_distance,
    identity,
    kron,
    partial_trace_first,
)

MATRIX_N_MAX = 8


def hilbert_dim(n: int) -> int:
    return 2 ** (n // 2)


def _check_n(n: int, lo: int = 2) -> None:
    if not lo <= n <= MATRIX_N_MAX:
        raise SizeLimitError(f"n={n} outside matrix-layer range {lo}..{MATRIX_N_MAX}")


@lru_cache(maxsize=None)
def _bob(n: int) -> tuple[np.ndarray, ...]:
    if n == 2:
        ops = (SIGMA_X, SIGMA_Y)
    elif n == 3:
        ops = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    elif n % 2 == 0:
        prev = _bob(n - 1)
        eye = identity(prev[0].shape[0])
        ops = tuple(kron(SIGMA_X, b) for b in prev) + (kron(SIGMA_Y, eye),)
    else:
        prev = _bob(n - 2)
        eye = identity(prev[0].shape[0])
        ops = tuple(kron(SIGMA_X, b) for b in prev) + (kron(SIGMA_Y, eye), kron(SIGMA_Z, eye))
    ops = tuple(np.array(o, dtype=complex) for o in ops)
    for o in ops:
        o.setflags(write=False)
    return ops


def bob_observables(n: int) -> list[np.ndarray]:
    _check_n(n)
    return list(_bob(n))


@lru_cache(maxsize=None)
def _alice(n: int) -> tuple[np.ndarray, ...]:
    bob_t = np.stack([b.T for b in _bob(n)])
    signs = comb.sign_matrix(n)
    ops = np.einsum("iy,yab->iab", signs, bob_t) / np.sqrt(n)
    ops.setflags(write=False)
    return tuple(ops)


def alice_observable(n: int, i: int) -> np.ndarray:
    _check_n(n)
    if not 1 <= i <= 2 ** (n - 1):
        raise IndexError(f"Alice index i={i} outside 1..{2 ** (n - 1)}")
    return _alice(n)[i - 1]


def alice_observables(n: int) -> list[np.ndarray]:
    _check_n(n)
    return list(_alice(n))


@dataclass(frozen=True)
class ObservableSet:
    n: int
    dim: int
    bob: tuple[np.ndarray, ...]
    alice: tuple[np.ndarray, ...]


def observable_set(n: int) -> ObservableSet:
    _check_n(n)
    return ObservableSet(n=n, dim=hilbert_dim(n), bob=_bob(n), alice=_alice(n))


@dataclass(frozen=True)
class EntangledState:
    n: int
    dim: int
    rho: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        v = np.zeros(self.dim * self.dim, dtype=complex)
        v[:: self.dim + 1] = 1 / np.sqrt(self.dim)
        return v


def max_entangled_state(n: int) -> EntangledState:
    _check_n(n)
    d = hilbert_dim(n)
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1 / np.sqrt(d)
    rho = np.outer(v, v.conj())
    rho.setflags(write=False)
    return EntangledState(n=n, dim=d, rho=rho)


def steered_states(n: int, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Bob's conditional states (rho_{x^i}, rho_{x^l}) after Alice measures A_i.

    Normalized so that each has unit trace: rho_{x^i} = 2 tr_A[(P (x) I) rho_AB]
    with P = (I + A_i)/2, and rho_{x^l} likewise with I - P.
    """
    a = alice_observable(n, i)
    state = max_entangled_state(n)
    d = state.dim
    proj = (identity(d) + a) / 2
    eye = identity(d)
    plus = 2 * partial_trace_first(kron(proj, eye) @ state.rho, d)
    minus = 2 * partial_trace_first(kron(eye - proj, eye) @ state.rho, d)
    return plus, minus


def all_steered_states(n: int) -> list[np.ndarray]:
    """rho_{x^delta} for delta = 1..2^n, in the order of ``enumerate_inputs``."""
    half = 2 ** (n - 1)
    out: list = [None] * (2 * half)
    for i in range(1, half + 1):
        plus, minus = steered_states(n, i)
        out[i - 1] = plus
        out[2 * half - i] = minus
    return out


def verify_alice_constraints(n: int) -> float:
    """Largest Frobenius norm of sum_i (-1)^{s.x^i} A_i over non-trivial parities s."""
    _check_n(n)
    parities = comb.nontrivial_parities(n)
    if not parities:
        raise NoConstraintsError(f"no non-trivial constraints exist for n={n}")
    inputs = comb.enumerate_inputs(n)
    alice = _alice(n)
    worst = 0.0
    for s in parities:
        total = sum(
            (-1) ** comb.parity_bit(s, inputs.string(i)) * alice[i - 1]
            for i in range(1, 2 ** (n - 1) + 1)
        )
        worst = max(worst, float(np.linalg.norm(total)))
    return worst


def verify_parity_obliviousness(n: int) -> float:
    """Largest distance between the s.x = 0 and s.x = 1 mixtures of steered states."""
    _check_n(n)
    inputs = comb.enumerate_inputs(n)
    states = all_steered_states(n)
    norm = 2 ** (n - 1)
    worst = 0.0
    for s in comb.parity_set(n):
        mix = [np.zeros_like(states[0]), np.zeros_like(states[0])]
        for delta, rho in enumerate(states, start=1):
            mix[comb.parity_bit(s, inputs.string(delta))] += rho / norm
        worst = max(worst, frobenius_distance(mix[0], mix[1]))
    return worst


def optimality_residual(n: int) -> float:
    """Check sum_i (-1)^{x^i_y} (A_i (x) I)|phi> = (2^(n-1)/sqrt n)(I (x) B_y)|phi>.

    Returns the largest vector-norm residual over y.
    """
    state = max_entangled_state(n)
    phi = state.vector
    d = state.dim
    signs = comb.sign_matrix(n)
    alice = _alice(n)
    scale = 2 ** (n - 1) / np.sqrt(n)
    worst = 0.0
    for y, b in enumerate(_bob(n)):
        lhs = sum(signs[i, y] * alice[i] for i in range(len(alice)))
        left = kron(lhs, identity(d)) @ phi
        right = scale * (kron(identity(d), b) @ phi)
        worst = max(worst, float(np.linalg.norm(left - right)))
    return worst
