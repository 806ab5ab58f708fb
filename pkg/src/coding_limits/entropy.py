"""Binary and M-ary entropy functions and their inverses.

All entropies are in bits. The M-ary entropy

    e_M(p) = e_2(p) + p * log2(M - 1)

is the largest entropy of an M-ary random variable that differs from a
fixed symbol with probability ``p``. Alphabets of ``M = 2**k`` symbols are
common (k-bit frames); the ``*_k`` variants take the bit count ``k`` so that
``2**k`` never has to be formed.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

_LN2 = math.log(2.0)
_EPS = np.finfo(float).eps
_MAX_ITER = 2000
# slack for entropy arguments that overshoot their range by rounding only
_H_SLACK = 1e-12


def _check_probability(p, name="p"):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {p!r}")


def _e2(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    # (1-p)*log2(1-p) through log1p keeps full precision for small p
    return (-p * math.log(p) - (1.0 - p) * math.log1p(-p)) / _LN2


def log2_pow2_minus_one(k: int) -> float:
    """Return ``log2(2**k - 1)`` without forming ``2**k``.

    Uses ``k + log2(1 - 2**-k)``; for large ``k`` the correction underflows
    gracefully to zero.
    """
    if k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if k == 1:
        return 0.0
    return k + math.log1p(-math.ldexp(1.0, -k)) / _LN2


def _log2_m_minus_one(M: int) -> float:
    if M < 2 or int(M) != M:
        raise DomainError(f"alphabet size M must be an integer >= 2, got {M!r}")
    M = int(M)
    if M & (M - 1) == 0:
        return log2_pow2_minus_one(M.bit_length() - 1)
    return math.log2(M - 1)


def _log2_m(M: int) -> float:
    M = int(M)
    if M & (M - 1) == 0:
        return float(M.bit_length() - 1)
    return math.log2(M)


def binary_entropy(p):
    """Binary entropy ``e_2(p)`` in bits, with ``0 log 0 = 0``.

    Accepts a scalar or an array-like of probabilities.
    """
    if np.ndim(p) == 0:
        p = float(p)
        _check_probability(p)
        return _e2(p)
    p = np.asarray(p, dtype=float)
    if np.any((p < 0.0) | (p > 1.0)) or np.any(np.isnan(p)):
        raise DomainError("all probabilities must lie in [0, 1]")
    inner = (p > 0.0) & (p < 1.0)
    q = np.where(inner, p, 0.5)
    out = (-q * np.log(q) - (1.0 - q) * np.log1p(-q)) / _LN2
    return np.where(inner, out, 0.0)


def _m_ary(p, log2_m1):
    if np.ndim(p) == 0:
        return binary_entropy(p) + float(p) * log2_m1
    return binary_entropy(p) + np.asarray(p, dtype=float) * log2_m1


def m_ary_entropy(p, M: int):
    """M-ary entropy ``e_M(p) = e_2(p) + p log2(M - 1)`` in bits."""
    return _m_ary(p, _log2_m_minus_one(M))


def m_ary_entropy_k(p, k: int):
    """M-ary entropy for ``M = 2**k``, with the alphabet given by ``k``."""
    return _m_ary(p, log2_pow2_minus_one(k))


def _invert(h: float, log2_m1: float, p_max: float) -> float:
    """Solve ``e_2(p) + p*log2_m1 = h`` for p in ``[0, p_max]``.

    Safeguarded Newton: every iterate stays inside a shrinking bracket and a
    bisection step replaces any Newton step that would leave it. The function
    is concave and increasing on the bracket, so Newton steps approach the
    root from below once one lands left of it.
    """
    if h <= 0.0:
        return 0.0
    top = _e2(p_max) + p_max * log2_m1
    if h >= top:
        return p_max

    lo, hi = 0.0, p_max
    p = 0.5 * p_max
    for _ in range(_MAX_ITER):
        f = _e2(p) + p * log2_m1 - h
        if f == 0.0:
            return p
        if f < 0.0:
            lo = p
        else:
            hi = p
        slope = math.log((1.0 - p) / p) / _LN2 + log2_m1
        p_new = p - f / slope if slope > 0.0 else -1.0
        if not lo < p_new < hi:
            p_new = 0.5 * (lo + hi)
            if p_new <= lo:
                # bracket collapsed to adjacent subnormals
                return hi
        if abs(p_new - p) <= 4.0 * _EPS * p_new or hi - lo <= 4.0 * _EPS * hi:
            return p_new
        p = p_new
    return p


def _check_entropy(h, h_max):
    if not (-_H_SLACK <= h <= h_max + _H_SLACK * max(1.0, h_max)):
        raise DomainError(f"entropy value must lie in [0, {h_max}], got {h!r}")
    return min(max(h, 0.0), h_max)


def inv_binary_entropy(h: float) -> float:
    """Return the unique ``p`` in ``[0, 0.5]`` with ``e_2(p) = h``."""
    h = _check_entropy(float(h), 1.0)
    return _invert(h, 0.0, 0.5)


def inv_m_ary_entropy(h: float, M: int) -> float:
    """Return the unique ``p`` in ``[0, (M-1)/M]`` with ``e_M(p) = h``."""
    log2_m1 = _log2_m_minus_one(M)
    h = _check_entropy(float(h), _log2_m(M))
    M = int(M)
    p_max = 1.0 - 1.0 / M if M.bit_length() < 1024 else 1.0
    return _invert(h, log2_m1, p_max)


def inv_m_ary_entropy_k(h: float, k: int) -> float:
    """Inverse of :func:`m_ary_entropy_k` on ``[0, 1 - 2**-k]``."""
    log2_m1 = log2_pow2_minus_one(k)
    h = _check_entropy(float(h), float(k))
    return _invert(h, log2_m1, 1.0 - math.ldexp(1.0, -k))
