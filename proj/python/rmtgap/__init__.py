"""GOE/LOE gap probabilities and eigenvalue marginals at arbitrary precision.

High-precision results are returned as decimal strings; wrap them in
``mpmath.mpf`` or ``decimal.Decimal`` to keep every digit.
"""

from ._core import (
    PrecisionExhausted,
    __version__,
    counting_stats,
    cumulants,
    gap_probabilities,
    large_deviation,
    marginal_cdf,
    marginal_pdf,
    mc_gap_probabilities,
    mp_tail_mass,
)

__all__ = [
    "PrecisionExhausted",
    "__version__",
    "counting_stats",
    "cumulants",
    "gap_probabilities",
    "large_deviation",
    "marginal_cdf",
    "marginal_pdf",
    "mc_gap_probabilities",
    "mp_tail_mass",
]
