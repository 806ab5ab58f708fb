"""Lowest possible bit and frame error ratios for coding above capacity.

Submodules
----------
entropy    binary / M-ary entropy functions and their inverses
dmc        discrete memoryless channels, mutual information, Blahut-Arimoto
bounds     BER/FER lower bounds and rate limits as functions of C/R
awgn_bpsk  BPSK-AWGN capacity and Eb/N0 bound curves
endchan    Monte Carlo simulation of the bound-achieving end-to-end channels
cli        the ``coding-limits`` command
"""

from .bounds import (
    BoundPoint,
    Measure,
    OperatingPoint,
    ber_lower_bound,
    ber_prime,
    end_to_end_mi_per_bit,
    fano_error_bound,
    fer_lower_bound,
    fer_lower_bound_asymptotic,
    fer_prime,
    max_rate_for_tolerated_ber,
    max_rate_for_tolerated_fer,
)
from .entropy import (
    binary_entropy,
    inv_binary_entropy,
    inv_m_ary_entropy,
    inv_m_ary_entropy_k,
    m_ary_entropy,
    m_ary_entropy_k,
)
from .errors import ConvergenceError, DomainError, QuadratureError

__version__ = "0.1.0"
