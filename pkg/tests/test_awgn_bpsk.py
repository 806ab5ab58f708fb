import math

import numpy as np
import pytest

from coding_limits.awgn_bpsk import (
    bound_curve,
    bpsk_awgn_capacity,
    db_grid,
    ebn0_to_esn0,
    shannon_threshold,
)
from coding_limits.bounds import Measure
from coding_limits.entropy import binary_entropy
from coding_limits.errors import DomainError

# mpmath quadrature of 1 - E[log2(1 + exp(-2y/sigma^2))], 30 digits
CAPACITY_REF = {
    0.1: 0.131416082352847202684,
    0.5: 0.485944154132935320114,
    1.0: 0.721451590790388129328,
    2.0: 0.912822285774482158909,
    5.0: 0.996756327990029668849,
}
# mpmath root of C(R * Eb/N0) = R
THRESHOLD_REF = {
    0.25: -0.794059061705078637228,
    0.5: 0.187060377377671350378,
    0.75: 1.626370964812739665067,
}
ULTIMATE_LIMIT_DB = 10 * math.log10(math.log(2))


def gauss_hermite_capacity(esn0, n=200):
    """Independent route: Gauss-Hermite rule on the log-likelihood-ratio form."""
    sigma2 = 1.0 / (2.0 * esn0)
    x, w = np.polynomial.hermite_e.hermegauss(n)
    y = 1.0 + math.sqrt(sigma2) * x
    vals = np.logaddexp(0.0, -2.0 * y / sigma2) / math.log(2)
    return 1.0 - float(np.sum(w * vals) / math.sqrt(2 * math.pi))


def mc_capacity(esn0, n, seed):
    """Monte Carlo estimate and standard error of the BPSK mutual information."""
    rng = np.random.default_rng(seed)
    sigma = math.sqrt(1.0 / (2.0 * esn0))
    x = rng.choice([-1.0, 1.0], size=n)
    y = x + sigma * rng.standard_normal(n)
    # log2 p(y|x) - log2 p(y) with equiprobable inputs
    a = -((y - x) ** 2) / (2 * sigma**2)
    b = -((y + x) ** 2) / (2 * sigma**2)
    dens = 1.0 + (a - np.logaddexp(a, b)) / math.log(2)
    return float(dens.mean()), float(dens.std() / math.sqrt(n))


@pytest.mark.parametrize("esn0, ref", sorted(CAPACITY_REF.items()))
def test_capacity_against_mpmath(esn0, ref):
    assert bpsk_awgn_capacity(esn0) == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("esn0", [0.01, 0.3, 1.0, 3.0, 8.0])
def test_capacity_against_gauss_hermite(esn0):
    assert bpsk_awgn_capacity(esn0) == pytest.approx(gauss_hermite_capacity(esn0), abs=1e-9)


def test_capacity_limits():
    assert bpsk_awgn_capacity(0.0) == 0.0
    assert bpsk_awgn_capacity(1e6) == 1.0
    assert bpsk_awgn_capacity(math.inf) == 1.0
    # low-SNR slope: C ~ Es/N0 * log2(e)
    assert bpsk_awgn_capacity(1e-6) == pytest.approx(1e-6 / math.log(2), rel=1e-5)
    with pytest.raises(DomainError):
        bpsk_awgn_capacity(-1.0)


def test_capacity_increasing_and_below_gaussian_ceiling():
    snr = np.logspace(-4, 2, 200)
    caps = np.array([bpsk_awgn_capacity(s) for s in snr])
    assert np.all(np.diff(caps[caps < 1.0]) > 0)
    ceiling = np.minimum(1.0, 0.5 * np.log2(1 + 2 * snr))
    assert np.all(caps <= ceiling + 1e-12)


@pytest.mark.parametrize("esn0", [0.1, 0.5, 1.0, 2.0, 4.0])
def test_capacity_against_monte_carlo(esn0):
    est, se = mc_capacity(esn0, 10**6, seed=int(esn0 * 100))
    assert abs(bpsk_awgn_capacity(esn0) - est) < 3 * se


def test_hard_decision_capacity():
    esn0 = 1.0
    p = 0.5 * math.erfc(math.sqrt(esn0))
    assert bpsk_awgn_capacity(esn0, hard_decision=True) == pytest.approx(1 - binary_entropy(p))
    assert bpsk_awgn_capacity(esn0, hard_decision=True) < bpsk_awgn_capacity(esn0)


def test_ebn0_to_esn0():
    assert ebn0_to_esn0(0.0, 1.0) == 1.0
    assert ebn0_to_esn0(10 * math.log10(2), 0.5) == pytest.approx(1.0)
    assert ebn0_to_esn0(3.0103, 0.5) == pytest.approx(1.0, abs=1e-5)
    assert ebn0_to_esn0(10.0, 0.25) == pytest.approx(2.5)
    with pytest.raises(DomainError):
        ebn0_to_esn0(0.0, 0.0)


@pytest.mark.parametrize("rate, ref", sorted(THRESHOLD_REF.items()))
def test_threshold_against_mpmath(rate, ref):
    assert shannon_threshold(rate) == pytest.approx(ref, abs=1e-6)


def test_threshold_small_rate_expansion():
    # capacity ~ (s - s^2)/ln2 with s = Es/N0 gives Eb/N0 ~ ln2 (1 + r ln2)
    r = 0.01
    expansion_db = ULTIMATE_LIMIT_DB + 10 / math.log(10) * r * math.log(2)
    assert shannon_threshold(r) == pytest.approx(expansion_db, abs=1e-3)
    assert ULTIMATE_LIMIT_DB < shannon_threshold(0.001) < ULTIMATE_LIMIT_DB + 0.01


def test_threshold_errors():
    with pytest.raises(DomainError):
        shannon_threshold(1.0)
    with pytest.raises(DomainError):
        shannon_threshold(0.5, bracket=(2.0, 5.0))


def test_db_grid_is_inclusive_and_reproducible():
    g = db_grid(-1.0, 1.0, 0.1)
    assert len(g) == 21 and g[0] == -1.0 and g[-1] == 1.0
    assert g == db_grid(-1.0, 1.0, 0.1)
    assert g[13] == 0.3
    with pytest.raises(DomainError):
        db_grid(0.0, 1.0, 0.0)


def test_bound_curve_ber_at_quarter_capacity():
    # find the Eb/N0 where C = 0.25 at R = 0.5, then the BER bound is e2^-1(0.5)
    from scipy.optimize import brentq

    x = brentq(lambda d: bpsk_awgn_capacity(ebn0_to_esn0(d, 0.5)) - 0.25, -10, 10, xtol=1e-12)
    (pt,) = bound_curve(0.5, Measure.BER, [x])
    assert pt.value == pytest.approx(0.11002786443835955, abs=1e-8)
    assert pt.rate == 0.5 and pt.k is None


def test_bound_curve_shapes():
    grid = db_grid(-2.0, 4.0, 0.25)
    for rate in (0.25, 0.5, 0.75):
        t = shannon_threshold(rate)
        for measure in ("ber", "fer", "ber-prime", "fer-prime"):
            for pt in bound_curve(rate, measure, grid):
                if pt.abscissa > t + 1e-6:
                    assert pt.value == 0.0
                elif pt.abscissa < t - 1e-6:
                    assert pt.value > 0.0
                if measure == "fer-prime" and pt.abscissa < t:
                    assert pt.value == 1.0


def test_bound_curve_finite_k_and_errors():
    pts = bound_curve(0.5, "fer", [-1.0], k=8)
    assert pts[0].k == 8
    assert 0 < pts[0].value < bound_curve(0.5, "fer", [-1.0])[0].value
    with pytest.raises(DomainError):
        bound_curve(0.5, "ber", [])
    with pytest.raises(DomainError):
        bound_curve(0.0, "ber", [0.0])
