"""Bit strings, parity sets and the ordered input set of the n-bit game.

Bit strings are tuples of 0/1 ints, most significant bit first, so that
ascending binary order matches the listing x^1 = 00..0, x^2 = 00..1, ...
Indices into the ordered set are 1-based: x^i and x^l are complements
whenever i + l = 2^n + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import SizeLimitError

BitString = tuple[int, ...]

MAX_INPUT_BITS = 20


@dataclass(frozen=True)
class OrderedInputSet:
    """All 2^n strings of length n in ascending binary order.

    ``bits`` is a read-only ``(2**n, n)`` uint8 array; row ``delta - 1`` holds
    x^delta.
    """

    n: int
    bits: np.ndarray

    def __len__(self) -> int:
        return self.bits.shape[0]

    def string(self, delta: int) -> BitString:
        if not 1 <= delta <= len(self):
            raise IndexError(f"delta={delta} outside 1..{len(self)}")
        return tuple(int(b) for b in self.bits[delta - 1])

    def complement_index(self, delta: int) -> int:
        """Index l with delta + l = 2^n + 1."""
        if not 1 <= delta <= len(self):
            raise IndexError(f"delta={delta} outside 1..{len(self)}")
        return len(self) + 1 - delta

    @property
    def strings(self) -> list[BitString]:
        return [tuple(int(b) for b in row) for row in self.bits]


def _check_n(n: int, lo: int, hi: int) -> None:
    if not isinstance(n, (int, np.integer)) or not lo <= n <= hi:
        raise SizeLimitError(f"n={n!r} outside supported range {lo}..{hi}")


@lru_cache(maxsize=None)
def _bits_table(n: int) -> np.ndarray:
    idx = np.arange(2**n, dtype=np.uint32)
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint32)
    table = ((idx[:, None] >> shifts) & 1).astype(np.uint8)
    table.setflags(write=False)
    return table


def enumerate_inputs(n: int) -> OrderedInputSet:
    _check_n(n, 1, MAX_INPUT_BITS)
    return OrderedInputSet(n=int(n), bits=_bits_table(int(n)))


def hamming_weight(s: BitString) -> int:
    return sum(s)


def parity_set(n: int) -> list[BitString]:
    """Strings of Hamming weight >= 2 (the parities that must stay hidden)."""
    if n < 2:
        raise SizeLimitError(f"parity set is empty for n={n}")
    return [s for s in product((0, 1), repeat=n) if sum(s) >= 2]


def nontrivial_parities(n: int) -> list[BitString]:
    """Odd-weight members of the parity set.

    Even-weight parities are hidden automatically by P + (I - P) = I; the
    odd-weight ones each impose a linear constraint on Alice's observables.
    There are 2^(n-1) - n of them.
    """
    return [s for s in parity_set(n) if sum(s) % 2 == 1]


def parity_bit(s: BitString, x: BitString) -> int:
    if len(s) != len(x):
        raise ValueError(f"length mismatch: {len(s)} vs {len(x)}")
    return sum(a & b for a, b in zip(s, x)) % 2


def sign_matrix(n: int) -> np.ndarray:
    """Integer matrix ``S[i-1, y-1] = (-1)^{x^i_y}`` for i = 1..2^(n-1).

    These are the coefficients of the Bell expression; row i pairs with
    Alice's i-th observable, column y with Bob's y-th.
    """
    _check_n(n, 1, MAX_INPUT_BITS)
    half = _bits_table(int(n))[: 2 ** (n - 1)]
    return (1 - 2 * half.astype(np.int64))


def constraint_matrix(n: int) -> np.ndarray:
    """Integer matrix ``C[i-1, c] = (-1)^{s_c . x^i}`` over the non-trivial parities."""
    half = _bits_table(int(n))[: 2 ** (n - 1)].astype(np.int64)
    parities = np.array(nontrivial_parities(n), dtype=np.int64).reshape(-1, n)
    return 1 - 2 * ((half @ parities.T) % 2)
