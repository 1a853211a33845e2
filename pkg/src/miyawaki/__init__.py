"""Exact and numerical critical values of the standard L-function of Miyawaki's
genus-3 cusp form F12.

The standard L-function factors as

    L(s, F12, St) = L(s+11, Delta x Delta) L(s+10, g20) L(s+9, g20)

and each factor is computed exactly (rational times a power of pi, in units of
Petersson norms) and independently by floating-point L-function evaluation.
"""

from miyawaki.exact import PiExact, bernoulli, factor_rational, gamma_exact, zeta_exact
from miyawaki.holproj import Method

CRITICAL_POINTS = (-8, -6, -4, -2, 0, 1, 3, 5, 7, 9)

__all__ = [
    "CRITICAL_POINTS",
    "Method",
    "PiExact",
    "bernoulli",
    "factor_rational",
    "gamma_exact",
    "zeta_exact",
]

__version__ = "0.1.0"
