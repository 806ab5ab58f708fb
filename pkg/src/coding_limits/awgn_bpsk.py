"""Capacity of BPSK over the real AWGN channel and Eb/N0 bound curves.

Convention: antipodal symbols ``x = +-1`` with ``Es = 1`` and real Gaussian
noise of variance ``N0 / 2``, i.e. ``sigma**2 = 1 / (2 Es/N0)``. The
information energy per bit is ``Eb = Es / R``.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import integrate, optimize, special

from .bounds import BoundPoint, Measure, OperatingPoint, evaluate
from .entropy import binary_entropy
from .errors import DomainError, QuadratureError

CAPACITY_ATOL = 1e-9
# integration range in noise standard deviations around a signal point
TRUNCATION_SIGMAS = 12.0
# below this Es/N0 the capacity is Es/N0 * log2(e) to double precision
_TINY_SNR = 1e-14
# above this Es/N0 the capacity equals 1 to double precision
_HUGE_SNR = 1e3

_LOG2E = 1.0 / math.log(2.0)


def _output_info_density(t, sigma):
    """``log2 p(y | x=+1) - log2 p(y)`` at ``y = 1 + sigma t``.

    The Gaussian normalization cancels between the two densities; what
    remains is ``1 - log2(1 + exp(-2y / sigma^2))``, evaluated stably.
    """
    y = 1.0 + sigma * t
    return 1.0 - np.logaddexp(0.0, -2.0 * y / sigma**2) * _LOG2E


def bpsk_output_mutual_information(esn0: float, atol: float = CAPACITY_ATOL):
    """Return ``(I, error_estimate)`` for equiprobable BPSK at ``Es/N0 = esn0``.

    ``I = h(Y) - h(Y | X)`` with the output entropy integral taken over
    ``+-TRUNCATION_SIGMAS`` around the signal point; by symmetry one signal
    point suffices. Uses adaptive Gauss-Kronrod quadrature.
    """
    sigma = math.sqrt(1.0 / (2.0 * esn0))
    span = TRUNCATION_SIGMAS

    def integrand(t):
        return math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi) * float(
            _output_info_density(t, sigma)
        )

    # the density kink sits where y = 0, i.e. t = -1/sigma
    points = [0.0]
    if -span < -1.0 / sigma < span:
        points.append(-1.0 / sigma)
    value, err = integrate.quad(
        integrand, -span, span, points=sorted(points), epsabs=atol * 1e-3, epsrel=1e-13, limit=400
    )
    # mass of the standard normal beyond the truncation (~2e-33) is ignored
    return value, err


def bpsk_awgn_capacity(esn0_linear: float, hard_decision: bool = False) -> float:
    """Capacity in bits per use of BPSK over AWGN at symbol SNR ``Es/N0``.

    With ``hard_decision=True`` the output is quantized to one bit, giving a
    BSC with crossover ``Q(sqrt(2 Es/N0))``.

    Raises
    ------
    QuadratureError
        If the integration error estimate exceeds 1e-9 bits.
    """
    esn0 = float(esn0_linear)
    if not esn0 >= 0.0:
        raise DomainError(f"Es/N0 must be >= 0, got {esn0_linear!r}")
    if hard_decision:
        p = 0.5 * special.erfc(math.sqrt(esn0)) if math.isfinite(esn0) else 0.0
        return 1.0 - binary_entropy(p)
    if esn0 < _TINY_SNR:
        return esn0 * _LOG2E
    if esn0 > _HUGE_SNR:
        return 1.0
    value, err = bpsk_output_mutual_information(esn0)
    if err > CAPACITY_ATOL:
        raise QuadratureError(
            f"quadrature error estimate {err:.2e} exceeds {CAPACITY_ATOL:.0e} bits", err
        )
    return min(max(value, 0.0), 1.0)


def ebn0_to_esn0(ebn0_db: float, rate: float) -> float:
    """Convert Eb/N0 in dB to linear Es/N0 for code rate ``rate``."""
    if not rate > 0.0:
        raise DomainError(f"rate must be > 0, got {rate!r}")
    return rate * 10.0 ** (ebn0_db / 10.0)


def db_grid(start: float, stop: float, step: float) -> list[float]:
    """Evenly spaced grid from ``start`` to ``stop`` inclusive.

    Points are ``start + i * step`` rounded to 12 decimals, so repeated calls
    give identical floats.
    """
    if not step > 0.0:
        raise DomainError(f"grid step must be > 0, got {step!r}")
    if stop < start:
        raise DomainError("grid stop lies below start")
    n = int(math.floor((stop - start) / step + 1e-9))
    return [round(start + i * step, 12) for i in range(n + 1)]


def bound_curve(
    rate: float,
    measure: Measure | str,
    ebn0_grid: Sequence[float],
    k: Optional[int] = None,
    hard_decision: bool = False,
) -> list[BoundPoint]:
    """Evaluate a bound at every Eb/N0 grid point for a code of the given rate.

    The FER bound is the large-frame one unless ``k`` is given.
    """
    measure = Measure(measure)
    if not len(ebn0_grid):
        raise DomainError("Eb/N0 grid must not be empty")
    points = []
    for ebn0_db in ebn0_grid:
        cap = bpsk_awgn_capacity(ebn0_to_esn0(ebn0_db, rate), hard_decision)
        op = OperatingPoint(cap, rate)
        points.append(
            BoundPoint(
                abscissa=float(ebn0_db),
                measure=measure,
                value=evaluate(measure, op, k),
                k=k if measure is Measure.FER else None,
                rate=rate,
            )
        )
    return points


def shannon_threshold(
    rate: float, hard_decision: bool = False, bracket: Iterable[float] = (-1.6, 40.0)
) -> float:
    """Eb/N0 in dB at which the BPSK capacity equals ``rate``.

    Below this value every BER and FER bound at this rate is positive, above
    it they vanish.
    """
    if not 0.0 < rate < 1.0:
        raise DomainError(f"rate must lie in (0, 1), got {rate!r}")
    lo, hi = bracket

    def excess(ebn0_db):
        return bpsk_awgn_capacity(ebn0_to_esn0(ebn0_db, rate), hard_decision) - rate

    if excess(lo) > 0.0 or excess(hi) < 0.0:
        raise DomainError(f"no capacity crossing for rate {rate} in [{lo}, {hi}] dB")
    return optimize.brentq(excess, lo, hi, xtol=1e-9, rtol=1e-12)
