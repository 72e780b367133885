"""Two-parameter dichotomic POVMs and the Lüders instrument.

An unsharp measurement of a +/-1 observable B with sharpness eta and
biasedness alpha has effects

    E(+/-) = c(+/-) Pi+ + d(+/-) Pi-,   c = (1 +/- alpha +/- eta)/2,
                                         d = (1 +/- alpha -/+ eta)/2,

with Pi(+/-) = (I +/- B)/2. Kraus operators are sqrt(c) Pi+ + sqrt(d) Pi-,
taken from the coefficients directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError
from .matrixcore import apply_local, identity

# Rounding slack when a family pins |alpha| + eta to exactly 1.
_COEFF_SLACK = 1e-12
# Residues this small are rounding noise of an exact zero; their square roots
# (~1e-8) would otherwise leak into xi.
_SNAP = 8 * 2.220446049250313e-16


@dataclass(frozen=True)
class PovmParams:
    eta: float
    alpha: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.eta <= 1.0 + _COEFF_SLACK):
            raise ParameterError(f"sharpness eta={self.eta} outside (0, 1]")
        if abs(self.alpha) + self.eta > 1.0 + _COEFF_SLACK:
            raise ParameterError(
                f"|alpha| + eta = {abs(self.alpha) + self.eta:.12g} exceeds 1"
            )

    @classmethod
    def sharp(cls) -> "PovmParams":
        return cls(1.0, 0.0)


def _root(value: float, what: str) -> float:
    if value < -_COEFF_SLACK:
        raise ParameterError(f"negative {what} {value:.3e}")
    return 0.0 if value < _SNAP else math.sqrt(value)


def coefficients(params: PovmParams) -> tuple[float, float, float, float]:
    """(c+, d+, c-, d-): weights of Pi+ and Pi- in E+ and E-."""
    a, e = params.alpha, params.eta
    coeffs = tuple(
        0.0 if abs(c) < _SNAP else c
        for c in ((1 + a + e) / 2, (1 + a - e) / 2, (1 - a - e) / 2, (1 - a + e) / 2)
    )
    for c in coeffs:
        if c < -_COEFF_SLACK:
            raise ParameterError(f"negative effect coefficient {c:.3e} for {params}")
    return coeffs


@dataclass(frozen=True)
class EffectPair:
    plus: np.ndarray
    minus: np.ndarray
    sqrt_plus: np.ndarray
    sqrt_minus: np.ndarray

    @property
    def kraus(self) -> tuple[np.ndarray, np.ndarray]:
        return self.sqrt_plus, self.sqrt_minus

    @property
    def observable(self) -> np.ndarray:
        """E+ - E- = alpha I + eta B."""
        return self.plus - self.minus


def projectors(b_obs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    eye = identity(b_obs.shape[0])
    return (eye + b_obs) / 2, (eye - b_obs) / 2


def effects(params: PovmParams, b_obs: np.ndarray) -> EffectPair:
    b_obs = np.asarray(b_obs, dtype=complex)
    if b_obs.ndim != 2 or b_obs.shape[0] != b_obs.shape[1]:
        raise DimensionError(f"observable must be square, got {b_obs.shape}")
    pi_p, pi_m = projectors(b_obs)
    cp, dp, cm, dm = coefficients(params)
    return EffectPair(
        plus=cp * pi_p + dp * pi_m,
        minus=cm * pi_p + dm * pi_m,
        sqrt_plus=_root(cp, "c+") * pi_p + _root(dp, "d+") * pi_m,
        sqrt_minus=_root(cm, "c-") * pi_p + _root(dm, "d-") * pi_m,
    )


def xi(params: PovmParams) -> float:
    """Coherence retained by one unselective Lüders measurement."""
    a, e = params.alpha, params.eta
    # (1 +/- a)^2 - e^2 factored so an exact zero factor stays zero
    lo_p, lo_m = 1 + a - e, 1 - a - e
    lo_p = 0.0 if abs(lo_p) < _SNAP else lo_p
    lo_m = 0.0 if abs(lo_m) < _SNAP else lo_m
    return 0.5 * (
        _root(lo_p * (1 + a + e), "radicand") + _root(lo_m * (1 - a + e), "radicand")
    )


def gamma(n: int, params: PovmParams) -> float:
    """Per-Bob attenuation of the Bell value under uniformly random settings."""
    if n < 2:
        raise ParameterError(f"gamma needs n >= 2, got {n}")
    return (1 + (n - 1) * xi(params)) / n


def luders_update(rho: np.ndarray, pair: EffectPair, dim_a: int) -> np.ndarray:
    """Unselective update sum_b (I (x) sqrt E_b) rho (I (x) sqrt E_b)."""
    return sum(apply_local(rho, k, dim_a) for k in pair.kraus)


def dephase(rho: np.ndarray, b_obs: np.ndarray, dim_a: int) -> np.ndarray:
    """Projective (sharp) unselective update in the eigenbasis of ``b_obs``."""
    return sum(apply_local(rho, p, dim_a) for p in projectors(b_obs))
