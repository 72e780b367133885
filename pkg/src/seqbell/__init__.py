"""Sequential sharing of non-locality and preparation contextuality.

Bell expressions with 2^(n-1) settings for Alice and n for Bob, simulated
with chains of unsharp Lüders measurements and checked against closed
forms and brute-force classical bounds.
"""

from .analytic import (
    BoundKind,
    PovmFamily,
    ThresholdChain,
    approx_threshold,
    bell_value_biased_closed,
    bell_value_closed,
    local_bound,
    max_sequential_bobs,
    min_n_for_k,
    pnc_bound,
    threshold_chain,
    tsirelson_value,
)
from .cascade import CascadeConfig, bell_value_numeric, bell_value_numeric_biased
from .measurement import PovmParams, effects, gamma, xi

__version__ = "0.1.0"
