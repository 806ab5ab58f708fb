"""Lower bounds on bit and frame error ratios above capacity, and rate limits.

Everything here is a closed form in the ratio ``C/R`` of channel capacity to
code rate (both in bits per channel use). All bounds clamp to zero once
``C >= R``, so curves can sweep across the capacity threshold.

Notation used in names:

* ``ber_prime`` is the BER left over by a scheme that minimizes the FER,
  ``fer_prime`` the FER left over by a scheme that minimizes the BER.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .entropy import (
    binary_entropy,
    inv_binary_entropy,
    inv_m_ary_entropy,
    inv_m_ary_entropy_k,
)
from .errors import DomainError


class Measure(str, enum.Enum):
    BER = "ber"
    FER = "fer"
    BER_PRIME = "ber-prime"
    FER_PRIME = "fer-prime"
    MI_PER_BIT = "mi-per-bit"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class OperatingPoint:
    """Capacity ``C`` and rate ``R`` of a coded transmission."""

    capacity: float
    rate: float

    def __post_init__(self):
        if not (self.capacity >= 0.0 and math.isfinite(self.capacity)):
            raise DomainError(f"capacity must be finite and >= 0, got {self.capacity!r}")
        if not self.rate > 0.0:
            raise DomainError(f"rate must be > 0, got {self.rate!r}")

    @property
    def ratio(self) -> float:
        return self.capacity / self.rate

    @classmethod
    def from_ratio(cls, ratio: float) -> "OperatingPoint":
        """Operating point with unit rate and ``C = ratio``."""
        return cls(capacity=float(ratio), rate=1.0)

    @property
    def gap(self) -> float:
        """``max(0, 1 - C/R)``: the per-bit information deficit."""
        return max(0.0, 1.0 - self.ratio)


@dataclass(frozen=True)
class BoundPoint:
    """One sample of a bound curve.

    ``abscissa`` is ``1 - C/R``, ``k`` or Eb/N0 in dB depending on the curve.
    """

    abscissa: float
    measure: Measure
    value: float
    k: Optional[int] = None
    rate: Optional[float] = None


def fano_error_bound(M: int, source_entropy_rate: float, mi_rate: float) -> float:
    """Smallest error probability allowed by Fano's inequality.

    Solves ``e_M(P_e) = max(0, H - I)`` for ``P_e`` on the increasing branch,
    where ``H`` is the source entropy and ``I`` the mutual information per
    source symbol.
    """
    if source_entropy_rate < 0.0 or mi_rate < 0.0:
        raise DomainError("entropy and mutual-information rates must be non-negative")
    return inv_m_ary_entropy(max(0.0, source_entropy_rate - mi_rate), M)


def ber_lower_bound(op: OperatingPoint) -> float:
    """Minimum BER at ``R > C``: ``e_2^{-1}(1 - C/R)``; zero when ``C >= R``."""
    return inv_binary_entropy(op.gap)


def _check_k(k):
    if int(k) != k or k < 1:
        raise DomainError(f"frame length k must be a positive integer, got {k!r}")
    return int(k)


def fer_lower_bound(op: OperatingPoint, k: int) -> float:
    """Minimum FER for k-bit frames: ``e_{2^k}^{-1}(k (1 - C/R))``.

    For ``k = 1`` this is :func:`ber_lower_bound`. Values for finite ``k`` are
    lower bounds only; they increase with ``k`` toward ``1 - C/R``.
    """
    k = _check_k(k)
    return inv_m_ary_entropy_k(k * op.gap, k)


def fer_lower_bound_asymptotic(op: OperatingPoint) -> float:
    """Minimum FER for frames of unbounded length: ``max(0, 1 - C/R)``."""
    return op.gap


def max_rate_for_tolerated_ber(capacity: float, ber_t: float) -> float:
    """Largest rate achievable with average BER at most ``ber_t``.

    ``C / (1 - e_2(ber_t))``. Raises :class:`DomainError` for ``ber_t >= 0.5``,
    where the rate is unbounded.
    """
    if capacity < 0.0:
        raise DomainError(f"capacity must be >= 0, got {capacity!r}")
    if not 0.0 <= ber_t < 0.5:
        raise DomainError(f"tolerated BER must lie in [0, 0.5), got {ber_t!r}")
    return capacity / (1.0 - binary_entropy(ber_t))


def max_rate_for_tolerated_fer(capacity: float, fer_t: float) -> float:
    """Largest rate achievable with FER at most ``fer_t``: ``C / (1 - fer_t)``."""
    if capacity < 0.0:
        raise DomainError(f"capacity must be >= 0, got {capacity!r}")
    if not 0.0 <= fer_t < 1.0:
        raise DomainError(f"tolerated FER must lie in [0, 1), got {fer_t!r}")
    return capacity / (1.0 - fer_t)


def ber_prime(op: OperatingPoint) -> float:
    """BER of a FER-optimal scheme: half the frames are garbage bits, ``(1 - C/R)/2``."""
    return 0.5 * op.gap


def fer_prime(op: OperatingPoint) -> float:
    """FER of a BER-optimal scheme for long frames: 0 if ``C >= R``, else 1."""
    return 0.0 if op.capacity >= op.rate else 1.0


def end_to_end_mi_per_bit(op: OperatingPoint) -> float:
    """Average mutual information per source bit of an optimal end-to-end channel."""
    return min(op.ratio, 1.0)


def evaluate(measure: Measure | str, op: OperatingPoint, k: Optional[int] = None) -> float:
    """Dispatch to the bound named by ``measure``.

    ``k`` only affects :attr:`Measure.FER`; without it the asymptotic bound is
    returned.
    """
    measure = Measure(measure)
    if measure is Measure.BER:
        return ber_lower_bound(op)
    if measure is Measure.FER:
        return fer_lower_bound_asymptotic(op) if k is None else fer_lower_bound(op, k)
    if measure is Measure.BER_PRIME:
        return ber_prime(op)
    if measure is Measure.FER_PRIME:
        return fer_prime(op)
    return end_to_end_mi_per_bit(op)
