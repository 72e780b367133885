"""Density-matrix simulation of one Alice and a chain of sequential Bobs.

Every Bob but the last performs an unselective Lüders measurement of one of
the n settings; the state handed to the next Bob is the setting-averaged
post-measurement state. The last Bob's Bell value is evaluated on whatever
reaches him.

For biased settings (Bob j repeats Bob j-1's setting with probability p)
the simulation keeps one branch state per setting of the most recent Bob,
weighted by that setting's probability. This is exact; no sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import combinatorics as comb
from .errors import ParameterError
from .matrixcore import expectation, kron
from .measurement import EffectPair, PovmParams, effects, luders_update
from .observables import alice_observables, bob_observables, max_entangled_state


@dataclass(frozen=True)
class CascadeConfig:
    """n, one PovmParams per sequential Bob, and the setting bias.

    ``bias_p=None`` means unbiased (each setting with probability 1/n).
    """

    n: int
    bobs: tuple[PovmParams, ...]
    bias_p: float | None = None
    keep_states: bool = False

    def __post_init__(self):
        object.__setattr__(self, "bobs", tuple(self.bobs))
        if not self.bobs:
            raise ParameterError("a cascade needs at least one Bob")
        for b in self.bobs:
            if not isinstance(b, PovmParams):
                raise ParameterError(f"expected PovmParams, got {b!r}")
        if self.bias_p is not None and not 0.0 <= self.bias_p <= 1.0:
            raise ParameterError(f"bias_p={self.bias_p} outside [0, 1]")

    @property
    def k(self) -> int:
        return len(self.bobs)

    @property
    def p(self) -> float:
        return 1.0 / self.n if self.bias_p is None else self.bias_p


@dataclass
class CascadeResult:
    bell_value: float
    settings_weights: list[float]
    per_bob_states: list[np.ndarray] | None = field(default=None, repr=False)


def _effects_for(n: int, params: PovmParams) -> list[EffectPair]:
    return [effects(params, b) for b in bob_observables(n)]


def _average_update(rho, pairs, weights, dim_a):
    return sum(w * luders_update(rho, pair, dim_a) for w, pair in zip(weights, pairs))


def _alice_sums(n: int) -> list[np.ndarray]:
    """sum_i (-1)^{x^i_y} A_i for each setting y."""
    signs = comb.sign_matrix(n)
    alice = alice_observables(n)
    return [
        sum(int(signs[i, y]) * alice[i] for i in range(len(alice)))
        for y in range(n)
    ]


def _bell_on(states: list[np.ndarray], n: int, params: PovmParams) -> float:
    """Bell value when setting y of the final Bob sees ``states[y]``."""
    pairs = _effects_for(n, params)
    total = 0.0
    for a_sum, pair, rho in zip(_alice_sums(n), pairs, states):
        total += expectation(rho, kron(a_sum, pair.observable))
    return total


def _run_unbiased(config: CascadeConfig, upto: int):
    n = config.n
    state = max_entangled_state(n)
    rho, d = state.rho, state.dim
    weights = [1.0 / n] * n
    kept = [rho] if config.keep_states else None
    for params in config.bobs[: upto - 1]:
        rho = _average_update(rho, _effects_for(n, params), weights, d)
        if kept is not None:
            kept.append(rho)
    return rho, weights, kept


def sequential_state(config: CascadeConfig, upto: int | None = None) -> np.ndarray:
    """State shared by Alice and Bob ``upto`` (1-based) before he measures."""
    upto = config.k if upto is None else upto
    if not 1 <= upto <= config.k:
        raise ParameterError(f"upto={upto} outside 1..{config.k}")
    if config.bias_p is not None:
        return _biased_state(config, upto)[1]
    return _run_unbiased(config, upto)[0]


def run_cascade(config: CascadeConfig) -> CascadeResult:
    if config.bias_p is not None:
        return _run_biased(config)
    rho, weights, kept = _run_unbiased(config, config.k)
    value = _bell_on([rho] * config.n, config.n, config.bobs[-1])
    return CascadeResult(bell_value=value, settings_weights=weights, per_bob_states=kept)


def bell_value_numeric(config: CascadeConfig) -> float:
    """Final Bob's Bell value under uniformly random settings."""
    if config.bias_p is not None:
        config = CascadeConfig(config.n, config.bobs, None, config.keep_states)
    return run_cascade(config).bell_value


def transition_matrix(n: int, p: float) -> np.ndarray:
    """T[y, y'] = probability that the next Bob picks y' after y."""
    off = (1.0 - p) / (n - 1)
    t = np.full((n, n), off)
    np.fill_diagonal(t, p)
    return t


def _biased_branches(config: CascadeConfig, upto: int):
    """Branch states for Bob ``upto``: entry y' is the (sub-normalized) state
    reaching him jointly with his setting being y'."""
    n = config.n
    state = max_entangled_state(n)
    d = state.dim
    t = transition_matrix(n, config.p)
    if upto == 1:
        return [state.rho / n for _ in range(n)], d, [state.rho]
    # First Bob picks uniformly.
    pairs = _effects_for(n, config.bobs[0])
    branches = [luders_update(state.rho, pair, d) / n for pair in pairs]
    kept = [state.rho]
    for params in config.bobs[1 : upto - 1]:
        kept.append(sum(branches))
        incoming = [sum(t[y, yp] * branches[y] for y in range(n)) for yp in range(n)]
        pairs = _effects_for(n, params)
        branches = [luders_update(rho, pair, d) for rho, pair in zip(incoming, pairs)]
    incoming = [sum(t[y, yp] * branches[y] for y in range(n)) for yp in range(n)]
    kept.append(sum(incoming))
    return incoming, d, kept


def _biased_state(config: CascadeConfig, upto: int):
    branches, _, kept = _biased_branches(config, upto)
    return branches, sum(branches), kept


def _run_biased(config: CascadeConfig) -> CascadeResult:
    n = config.n
    branches, _, kept = _biased_branches(config, config.k)
    setting_probs = [float(np.trace(b).real) for b in branches]
    conditioned = [b / w for b, w in zip(branches, setting_probs)]
    value = _bell_on(conditioned, n, config.bobs[-1])
    return CascadeResult(
        bell_value=value,
        settings_weights=setting_probs,
        per_bob_states=kept if config.keep_states else None,
    )


def bell_value_numeric_biased(config: CascadeConfig) -> float:
    """Final Bob's Bell value when each Bob from the second on repeats his
    predecessor's setting with probability ``config.p``."""
    if config.bias_p is None:
        config = CascadeConfig(config.n, config.bobs, 1.0 / config.n, config.keep_states)
    return _run_biased(config).bell_value
