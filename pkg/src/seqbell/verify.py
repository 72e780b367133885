"""Invariant checks run by ``seqbell verify``."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import analytic as an
from . import combinatorics as comb
from .cascade import CascadeConfig, bell_value_numeric
from .matrixcore import anticommutator, identity
from .measurement import PovmParams
from .observables import (
    alice_observables,
    bob_observables,
    optimality_residual,
    verify_alice_constraints,
    verify_parity_obliviousness,
)
from .oracle import local_bound_bruteforce, pnc_bound_bruteforce, quantum_max_check


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _abs(name, value, tol=1e-9):
    return Check(name, float(value), tol, bool(abs(value) < tol))


def _exact(name, got, want):
    return Check(name, float(got - want), 0.0, bool(got == want))


def run_checks(seed: int = 2024) -> list[Check]:
    out: list[Check] = []
    for n in range(2, 13):
        out.append(_exact(f"parity_set_size n={n}", len(comb.parity_set(n)), 2**n - n - 1))
        out.append(
            _exact(f"nontrivial_parities n={n}", len(comb.nontrivial_parities(n)), 2 ** (n - 1) - n)
        )
    for n in range(2, 9):
        bob = bob_observables(n)
        worst = max(
            (np.linalg.norm(anticommutator(a, b)) for i, a in enumerate(bob) for b in bob[i + 1 :]),
            default=0.0,
        )
        out.append(_abs(f"bob_anticommute n={n}", worst))
        eye = identity(bob[0].shape[0])
        worst = max(np.linalg.norm(a @ a - eye) for a in alice_observables(n))
        out.append(_abs(f"alice_unit_square n={n}", worst))
        out.append(_abs(f"optimality_on_state n={n}", optimality_residual(n)))
    for n in range(2, 7):
        out.append(_abs(f"tsirelson_matrix n={n}", quantum_max_check(n) - an.tsirelson_value(n)))
        out.append(_abs(f"parity_oblivious n={n}", verify_parity_obliviousness(n)))
        if n >= 3:
            out.append(_abs(f"alice_constraints n={n}", verify_alice_constraints(n)))
    for n in range(2, 6):
        out.append(_exact(f"local_bruteforce n={n}", local_bound_bruteforce(n), an.local_bound(n)))
        if n >= 3:
            out.append(_exact(f"pnc_bruteforce n={n}", pnc_bound_bruteforce(n), an.pnc_bound(n)))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(30):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, 4))
        bobs = []
        for _ in range(k):
            eta = float(rng.uniform(0.05, 1.0))
            alpha = float(rng.uniform(-(1 - eta), 1 - eta))
            bobs.append(PovmParams(eta, alpha))
        diff = bell_value_numeric(CascadeConfig(n, bobs)) - an.bell_value_closed(n, bobs)
        worst = max(worst, abs(diff))
    out.append(_abs("cascade_vs_closed_form", worst))

    fams = (an.PovmFamily.one_param(), an.PovmFamily.sum_to_one())
    bad = 0
    for n in range(2, 101):
        for fam in fams:
            c = an.threshold_chain(n, "pnc", fam).criticals
            bad += sum(1 for a, b in zip(c, c[1:]) if not b > a)
    out.append(_exact("chains_strictly_increasing", bad, 0))

    worst = -math.inf
    for n in range(2, 21):
        c = an.threshold_chain(n, "pnc", an.PovmFamily.one_param()).criticals
        for k in range(1, n + 1):
            worst = max(worst, c[k - 1] - an.approx_threshold(n, k))
    out.append(Check("approx_dominates_exact", worst, 0.0, worst <= 0.0))

    plateau = [an.first_threshold(n, "local") for n in range(50, 101)]
    ok = all(0.78 <= v <= 0.84 for v in plateau)
    out.append(Check("figure1_plateau_50_100", min(plateau), 0.78, ok))
    return out
