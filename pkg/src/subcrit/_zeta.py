"""Riemann and Hurwitz zeta functions for real ``s > 1``.

Partial sums plus an Euler-Maclaurin tail; good to ~1e-15 relative.
"""

import numpy as np

# B_{2j} / (2j)!
_BERNOULLI_OVER_FACTORIAL = (
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
)

_DIRECT_TERMS = 12


def _em_tail(s, a):
    """sum_{k>=0} (a + k)^{-s} for a >= _DIRECT_TERMS."""
    total = a ** (1.0 - s) / (s - 1.0) + 0.5 * a ** (-s)
    rising = s
    power = a ** (-s - 1.0)
    for j, coef in enumerate(_BERNOULLI_OVER_FACTORIAL):
        total = total + coef * rising * power
        # rising factorial s (s+1) ... (s+2j) for the next derivative order
        rising = rising * (s + 2 * j + 1) * (s + 2 * j + 2)
        power = power / (a * a)
    return total


def hurwitz_zeta(s, q):
    """Hurwitz zeta ``sum_{k>=0} (q + k)^{-s}``; ``q`` may be an array (q > 0)."""
    s = float(s)
    if not s > 1.0:
        raise ValueError(f"zeta needs s > 1, got {s}")
    q = np.asarray(q, dtype=float)
    head = np.zeros_like(q)
    shift = np.maximum(np.ceil(_DIRECT_TERMS - q), 0.0)
    # sum the first few terms directly until the argument is large enough
    for k in range(int(shift.max(initial=0.0))):
        mask = k < shift
        head = head + np.where(mask, (q + k) ** (-s), 0.0)
    result = head + _em_tail(s, q + shift)
    return result if result.ndim else float(result)


def zeta(s):
    """Riemann zeta ``sum_{k>=1} k^{-s}``."""
    return hurwitz_zeta(s, 1.0)
