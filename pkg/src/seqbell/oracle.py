"""Brute-force classical bounds by enumerating deterministic strategies.

A deterministic strategy assigns +/-1 to each of Alice's 2^(n-1)
observables and each of Bob's n observables. For fixed Alice signs a, Bob's
best reply is b_y = sign(sum_i S[i,y] a_i), so the maximum over b is
sum_y |sum_i S[i,y] a_i|. All arithmetic is on integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import combinatorics as comb
from .errors import SeqBellError, SizeLimitError
from .matrixcore import expectation, kron
from .observables import alice_observables, bob_observables, max_entangled_state

ORACLE_N_MAX = 5


class InfeasibleConstraintsError(SeqBellError):
    """No deterministic Alice assignment satisfies the parity constraints."""


@dataclass(frozen=True)
class DeterministicStrategy:
    alice_signs: tuple[int, ...]
    bob_signs: tuple[int, ...]

    def value(self, n: int) -> int:
        s = comb.sign_matrix(n)
        return int(np.asarray(self.alice_signs) @ s @ np.asarray(self.bob_signs))


def _check(n: int, lo: int) -> None:
    if not lo <= n <= ORACLE_N_MAX:
        raise SizeLimitError(f"brute force supports {lo} <= n <= {ORACLE_N_MAX}, got {n}")


def _alice_assignments(n: int) -> np.ndarray:
    m = 2 ** (n - 1)
    idx = np.arange(2**m, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(m - 1, -1, -1)) & 1
    return 1 - 2 * bits


def _best_reply_values(a: np.ndarray, n: int) -> np.ndarray:
    return np.abs(a @ comb.sign_matrix(n)).sum(axis=1)


def local_bound_bruteforce(n: int) -> int:
    _check(n, 2)
    return int(_best_reply_values(_alice_assignments(n), n).max())


def pnc_bound_bruteforce(n: int) -> int:
    """Maximum restricted to Alice signs with sum_i (-1)^{s.x^i} a_i = 0 for all
    non-trivial parities s."""
    _check(n, 3)
    a = _alice_assignments(n)
    feasible = np.all(a @ comb.constraint_matrix(n) == 0, axis=1)
    if not feasible.any():
        raise InfeasibleConstraintsError(f"no Alice assignment satisfies the constraints for n={n}")
    return int(_best_reply_values(a[feasible], n).max())


def full_enumeration_bound(n: int, constrained: bool = False) -> int:
    """Same maximum, enumerating Bob's signs too. Only sensible for n <= 3."""
    _check(n, 3 if constrained else 2)
    s = comb.sign_matrix(n)
    c = comb.constraint_matrix(n) if constrained else None
    best = None
    for a in product((1, -1), repeat=2 ** (n - 1)):
        a = np.array(a)
        if c is not None and np.any(a @ c != 0):
            continue
        row = a @ s
        for b in product((1, -1), repeat=n):
            v = int(row @ np.array(b))
            best = v if best is None else max(best, v)
    return best


def quantum_max_check(n: int) -> float:
    """Bell operator expectation with sharp measurements on the maximally
    entangled state."""
    rho = max_entangled_state(n).rho
    signs = comb.sign_matrix(n)
    alice, bob = alice_observables(n), bob_observables(n)
    total = 0.0
    for i, a in enumerate(alice):
        for y, b in enumerate(bob):
            total += int(signs[i, y]) * expectation(rho, kron(a, b))
    return total
