"""The n-bit parity-oblivious multiplexing game.

Monte Carlo runs use ``numpy.random.default_rng(seed)`` (PCG64). Draw order
per batch is fixed: Alice's measurement index, Alice's outcome, Bob's
setting, Bob's outcome, so a given seed always yields the same record.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import combinatorics as comb
from .errors import ParameterError
from .matrixcore import expectation, identity, kron
from .measurement import PovmParams, effects
from .observables import (
    alice_observables,
    all_steered_states,
    bob_observables,
    max_entangled_state,
)

_BATCH = 1 << 18


def success_probability(n: int, bell_value: float) -> float:
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    return 0.5 + bell_value / (2**n * n)


@dataclass
class GameRecord:
    n: int
    trials: int
    successes: int
    empirical_p: float
    analytic_p: float
    # parity s -> |P(b=0 | s.x=0) - P(b=0 | s.x=1)|
    parity_leakage: dict = field(default_factory=dict, repr=False)

    @property
    def max_parity_leakage(self) -> float:
        return max(self.parity_leakage.values(), default=0.0)


def _tables(n: int, povm: PovmParams):
    """Born probabilities: Alice's '+' outcome per i, Bob's '+' outcome per (delta, y)."""
    state = max_entangled_state(n)
    d = state.dim
    alice_plus = np.array(
        [expectation(state.rho, kron((identity(d) + a) / 2, identity(d))) for a in alice_observables(n)]
    )
    bob_plus = [effects(povm, b).plus for b in bob_observables(n)]
    rhos = all_steered_states(n)
    q = np.array([[expectation(rho, e) for e in bob_plus] for rho in rhos])
    return alice_plus, np.clip(q, 0.0, 1.0)


def simulate_game(n: int, trials: int, seed: int, povm: PovmParams | None = None) -> GameRecord:
    """Play the game ``trials`` times.

    Alice picks i uniformly and measures A_i; outcome '+' encodes x^i and '-'
    encodes its complement x^l. Bob picks y uniformly, measures B_y (unsharp
    if ``povm`` is given) and answers b = 0 on '+', b = 1 on '-'. He wins when
    b equals the y-th bit of the encoded string.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    povm = PovmParams.sharp() if povm is None else povm
    inputs = comb.enumerate_inputs(n)
    half = 2 ** (n - 1)
    alice_plus, q = _tables(n, povm)
    bits = inputs.bits.astype(np.int64)
    parities = np.array(comb.parity_set(n), dtype=np.int64)

    rng = np.random.default_rng(seed)
    successes = 0
    # counts[s, parity, b]
    counts = np.zeros((len(parities), 2, 2), dtype=np.int64)
    remaining = trials
    while remaining:
        m = min(remaining, _BATCH)
        remaining -= m
        i = rng.integers(0, half, size=m)
        alice_minus = rng.random(m) >= alice_plus[i]
        delta = np.where(alice_minus, 2 * half - 1 - i, i)
        y = rng.integers(0, n, size=m)
        b = (rng.random(m) >= q[delta, y]).astype(np.int64)
        successes += int(np.count_nonzero(b == bits[delta, y]))
        par = (bits[delta] @ parities.T) % 2
        for si in range(len(parities)):
            counts[si] += np.bincount(2 * par[:, si] + b, minlength=4).reshape(2, 2)

    leakage = {}
    for si, s in enumerate(parities):
        c = counts[si]
        p0 = c[0, 0] / max(c[0].sum(), 1)
        p1 = c[1, 0] / max(c[1].sum(), 1)
        leakage[tuple(int(v) for v in s)] = float(abs(p0 - p1))

    sharp_value = 2 ** (n - 1) * float(np.sqrt(n)) * povm.eta
    return GameRecord(
        n=n,
        trials=trials,
        successes=successes,
        empirical_p=successes / trials,
        analytic_p=success_probability(n, sharp_value),
        parity_leakage=leakage,
    )
