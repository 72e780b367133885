"""Closed-form bounds, Bell values and critical-sharpness chains.

A Bob "shares" a correlation when his Bell value strictly exceeds the
classical bound. Thresholds are infima, so a Bob shares exactly when his
critical sharpness is strictly below 1 (the last Bob may then measure at
eta = 1). Every chain evaluates predecessors at their own critical values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleFamilyError, ParameterError
from .measurement import PovmParams, gamma

# Chains without an explicit k_max stop at this length at the latest.
CHAIN_HARD_CAP = 100_000

_FEASIBILITY_SLACK = 1e-12


class BoundKind(enum.Enum):
    LOCAL = "local"
    PNC = "pnc"
    TSIRELSON = "tsirelson"

    @classmethod
    def parse(cls, value) -> "BoundKind":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class PovmFamily:
    """Rule fixing a Bob's biasedness from his sharpness.

    ``one_param``: alpha = 0. ``sum_to_one``: alpha = 1 - eta.
    ``fixed_alpha``: alpha = alpha0 for every Bob.
    """

    name: str
    alpha0: float = 0.0

    def __post_init__(self):
        if self.name not in ("one_param", "sum_to_one", "fixed_alpha"):
            raise ParameterError(f"unknown POVM family {self.name!r}")

    @classmethod
    def one_param(cls) -> "PovmFamily":
        return cls("one_param")

    @classmethod
    def sum_to_one(cls) -> "PovmFamily":
        return cls("sum_to_one")

    @classmethod
    def fixed_alpha(cls, alpha0: float) -> "PovmFamily":
        return cls("fixed_alpha", float(alpha0))

    @classmethod
    def parse(cls, name: str, alpha: float | None = None) -> "PovmFamily":
        key = name.replace("-", "_").lower()
        if key == "fixed_alpha":
            if alpha is None:
                raise ParameterError("fixed-alpha family needs an alpha value")
            return cls.fixed_alpha(alpha)
        return cls(key)

    def alpha_for(self, eta: float) -> float:
        if self.name == "one_param":
            return 0.0
        if self.name == "sum_to_one":
            return 1.0 - eta
        return self.alpha0

    def params_at(self, eta: float) -> PovmParams:
        return PovmParams(eta, self.alpha_for(eta))

    @property
    def alpha_rule(self) -> str:
        if self.name == "one_param":
            return "alpha=0"
        if self.name == "sum_to_one":
            return "alpha=1-eta"
        return f"alpha={self.alpha0:g}"

    @property
    def label(self) -> str:
        return self.name.replace("_", "-")


def local_bound(n: int) -> int:
    _need_n(n)
    return n * math.comb(n - 1, (n - 1) // 2)


def pnc_bound(n: int) -> int:
    _need_n(n)
    return 2 ** (n - 1)


def tsirelson_value(n: int) -> float:
    _need_n(n)
    return 2 ** (n - 1) * math.sqrt(n)


def bound_value(n: int, kind) -> float:
    kind = BoundKind.parse(kind)
    if kind is BoundKind.LOCAL:
        return local_bound(n)
    if kind is BoundKind.PNC:
        return pnc_bound(n)
    return tsirelson_value(n)


def first_threshold(n: int, kind) -> float:
    """bound / (2^(n-1) sqrt n), with the integer ratio formed exactly."""
    kind = BoundKind.parse(kind)
    if kind is BoundKind.TSIRELSON:
        raise ParameterError("thresholds are defined for the local and pnc bounds only")
    ratio = Fraction(int(bound_value(n, kind)), 2 ** (n - 1))
    return float(ratio) / math.sqrt(n)


def _need_n(n: int) -> None:
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")


def bell_value_closed(n: int, params_list: Sequence[PovmParams]) -> float:
    """Final Bob's value 2^(n-1) sqrt(n) eta_k prod_{j<k} gamma_j."""
    if not params_list:
        raise ParameterError("need at least one Bob")
    value = tsirelson_value(n) * params_list[-1].eta
    for params in params_list[:-1]:
        value *= gamma(n, params)
    return value


def bell_value_biased_closed(
    n: int, eta_list: Sequence[float], p_list: Sequence[float] | float
) -> float:
    """Product formula for biased settings (alpha = 0).

    Prior Bob j contributes p_j + (1 - p_j) sqrt(1 - eta_j^2).
    """
    k = len(eta_list)
    if k == 0:
        raise ParameterError("need at least one Bob")
    if isinstance(p_list, (int, float)):
        p_list = [float(p_list)] * (k - 1)
    if len(p_list) < k - 1:
        raise ParameterError(f"need {k - 1} bias values, got {len(p_list)}")
    value = tsirelson_value(n) * eta_list[-1]
    for eta, p in zip(eta_list[:-1], p_list):
        if not 0.0 <= p <= 1.0:
            raise ParameterError(f"bias p={p} outside [0, 1]")
        value *= p + (1 - p) * math.sqrt(max(1 - eta * eta, 0.0))
    return value


@dataclass(frozen=True)
class ThresholdChain:
    n: int
    kind: BoundKind
    family: PovmFamily
    criticals: tuple[float, ...]

    @property
    def shared_count(self) -> int:
        return sum(1 for c in self.criticals if c < 1.0)

    def predecessor_params(self, k: int) -> list[PovmParams]:
        """Critical-point parameters of Bobs 1..k-1."""
        return [self.family.params_at(e) for e in self.criticals[: k - 1]]

    def bell_values_sharp(self) -> list[float]:
        """Bob k's value with predecessors at critical sharpness and Bob k sharp."""
        return [
            bell_value_closed(self.n, self.predecessor_params(k) + [PovmParams.sharp()])
            for k in range(1, self.shared_count + 1)
        ]


def threshold_chain(n: int, kind, family: PovmFamily, k_max: int | None = None) -> ThresholdChain:
    """Critical sharpness of successive Bobs.

    eta*_1 = bound / tsirelson; eta*_k = eta*_{k-1} / gamma(eta*_{k-1}, alpha rule).
    Stops after ``k_max`` entries or at the first entry >= 1 (included).
    """
    kind = BoundKind.parse(kind)
    limit = CHAIN_HARD_CAP if k_max is None else int(k_max)
    if limit < 1:
        raise ParameterError(f"k_max must be >= 1, got {k_max}")
    eta = first_threshold(n, kind)
    criticals = [eta]
    while eta < 1.0 and len(criticals) < limit:
        alpha = family.alpha_for(eta)
        step = len(criticals)
        if abs(alpha) + eta > 1.0 + _FEASIBILITY_SLACK:
            raise InfeasibleFamilyError(
                f"{family.label} family infeasible at Bob {step}: "
                f"|alpha| + eta = {abs(alpha) + eta:.6g} > 1",
                step=step,
            )
        eta = eta / gamma(n, PovmParams(eta, alpha))
        criticals.append(eta)
    return ThresholdChain(n=n, kind=kind, family=family, criticals=tuple(criticals))


def max_sequential_bobs(n: int, kind, family: PovmFamily) -> int:
    return threshold_chain(n, kind, family).shared_count


def approx_threshold(n: int, k: int) -> float:
    """Large-n estimate 1/sqrt(n - k + 1) of Bob k's pnc threshold."""
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    return 1.0 / math.sqrt(n - k + 1)


def min_n_for_k(k: int, eta_final: float) -> int:
    """Smallest n with n >= k - 1 + 1/eta_final^2."""
    if not 0.0 < eta_final <= 1.0:
        raise ParameterError(f"eta_final={eta_final} outside (0, 1]")
    # slack absorbs rounding in 1/eta^2 (e.g. eta = 1/sqrt(3))
    return math.ceil(k - 1 + 1.0 / eta_final**2 - 1e-9)


def case_i_recursion(eta_prev: float, variant: str = "one_param") -> float:
    """Approximate next-Bob threshold.

    ``one_param``: eta / sqrt(1 - eta^2), from gamma > sqrt(1 - eta^2).
    ``sum_to_one``: eta / sqrt(1 - eta), from gamma >= sqrt(1 - eta).
    """
    if not 0.0 < eta_prev < 1.0:
        raise ParameterError(f"eta_prev={eta_prev} outside (0, 1)")
    variant = variant.replace("-", "_")
    if variant == "one_param":
        return eta_prev / math.sqrt(1 - eta_prev**2)
    if variant == "sum_to_one":
        return eta_prev / math.sqrt(1 - eta_prev)
    raise ParameterError(f"unknown variant {variant!r}")


def sum_to_one_nested_bound(etas: Sequence[float]) -> float:
    """Nested product bound for Bob k in the sum-to-one family, as printed.

    ``etas`` holds eta_2, ..., eta_k. Returns
    [eta_2^(2^(k-1)) * (prod_{m=0}^{k-2} (1 - eta_{k-m})^(2^m))^-1]^(-1/2).
    """
    if len(etas) < 1:
        raise ParameterError("need at least eta_2")
    k = len(etas) + 1
    eta2 = etas[0]
    log_prod = 0.0
    for m in range(k - 1):
        eta = etas[-1 - m]
        log_prod += (2**m) * math.log(1 - eta)
    log_inner = (2 ** (k - 1)) * math.log(eta2) - log_prod
    return math.exp(-0.5 * log_inner)


def sum_to_one_unrolled_bound(etas: Sequence[float]) -> float:
    """Bob k's bound from iterating eta -> eta / sqrt(1 - eta) starting at Bob 2.

    ``etas`` = eta_2..eta_{k-1}; returns eta_2 / sqrt(prod_j (1 - eta_j)).
    """
    if len(etas) < 1:
        raise ParameterError("need at least eta_2")
    prod = 1.0
    for eta in etas:
        prod *= 1 - eta
    return etas[0] / math.sqrt(prod)
