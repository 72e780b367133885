"""Dense complex-matrix helpers on top of numpy.

Matrices are plain ``numpy.ndarray`` of dtype complex128. Everything here is
closed form; there is deliberately no eigensolver, since every projector the
package needs is built from a known +/-1 observable.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, NumericalConsistencyError, SizeLimitError

ATOL = 1e-9
DIM_CAP = 4096

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

for _m in (I2, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.setflags(write=False)


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericalConsistencyError("matrix has non-finite entries")
    return a


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def kron(a, b, cap: int = DIM_CAP) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > cap:
        raise SizeLimitError(f"kron result {rows}x{cols} exceeds cap {cap}")
    return np.kron(a, b)


def _split(m: np.ndarray, dim_a: int) -> int:
    n = m.shape[0]
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got {m.shape}")
    if dim_a < 1 or n % dim_a:
        raise DimensionError(f"size {n} is not divisible by dim_a={dim_a}")
    return n // dim_a


def partial_trace_first(m, dim_a: int) -> np.ndarray:
    """Trace out the first tensor factor of a (dim_a*dim_b)-square matrix."""
    m = as_matrix(m)
    dim_b = _split(m, dim_a)
    return np.einsum("ijik->jk", m.reshape(dim_a, dim_b, dim_a, dim_b))


def apply_local(rho, op, dim_a: int) -> np.ndarray:
    """Return (I (x) op) rho (I (x) op)^dagger without forming the Kronecker product."""
    rho = as_matrix(rho)
    dim_b = _split(rho, dim_a)
    if op.shape != (dim_b, dim_b):
        raise DimensionError(f"operator {op.shape} does not act on dim_b={dim_b}")
    r = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    out = np.einsum("pq,aqcs,rs->apcr", op, r, op.conj())
    return out.reshape(rho.shape)


def is_hermitian(m, atol: float = ATOL) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and np.allclose(m, m.conj().T, atol=atol, rtol=0)


def expectation(rho, obs, atol: float = ATOL) -> float:
    """Real part of Tr[rho obs]; raises if the imaginary part exceeds ``atol``."""
    rho, obs = as_matrix(rho), as_matrix(obs)
    if rho.shape != obs.shape or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"shape mismatch {rho.shape} vs {obs.shape}")
    # Tr[rho obs] = sum_ij rho_ij obs_ji
    value = np.einsum("ij,ji->", rho, obs)
    if abs(value.imag) > atol:
        raise NumericalConsistencyError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def frobenius_distance(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def anticommutator(a, b) -> np.ndarray:
    return a @ b + b @ a
