"""Monte Carlo simulation of the end-to-end channels that attain the bounds.

Four end-to-end channel models map a k-bit source frame ``u`` to a decision
``u_hat``:

* :class:`Bsc` flips every bit independently (BER-optimal schemes);
* :class:`MarySymmetric` leaves a frame intact or replaces it by one of the
  ``2**k - 1`` wrong frames uniformly (FER-optimal schemes);
* :class:`BlockErasure` erases whole frames; an erased frame is delivered as
  a uniformly random frame and always counted as a frame error;
* :class:`FritchmanBurst` is a two-state good/burst Markov chain whose burst
  state flips bits with probability ``burst_flip``.

Randomness comes from Philox, a counter-based generator. Frames are processed
in fixed-size blocks and block ``j`` draws from the substream keyed by
``(seed, j)``, so results do not depend on how blocks are spread over worker
threads. The Fritchman chain carries state across frames and is simulated as
one sequential stream.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Optional, Union

import numpy as np

from .bounds import OperatingPoint, ber_lower_bound, fer_lower_bound
from .entropy import binary_entropy
from .errors import DomainError

THREADS_ENV = "CODING_LIMITS_THREADS"
BLOCK_BITS = 1 << 20
STREAM_CHUNK = 1 << 21
MIN_MI_SAMPLES = 10_000
SLACK_SIGMAS = 3.0


def _check_prob(value, name):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")


def _check_k(k):
    if int(k) != k or k < 1:
        raise DomainError(f"frame length k must be a positive integer, got {k!r}")


@dataclass(frozen=True)
class Bsc:
    crossover: float

    def __post_init__(self):
        _check_prob(self.crossover, "crossover")


@dataclass(frozen=True)
class MarySymmetric:
    k: int
    fer: float

    def __post_init__(self):
        _check_k(self.k)
        _check_prob(self.fer, "fer")


@dataclass(frozen=True)
class BlockErasure:
    k: int
    erasure_prob: float

    def __post_init__(self):
        _check_k(self.k)
        _check_prob(self.erasure_prob, "erasure_prob")


@dataclass(frozen=True)
class FritchmanBurst:
    """Good/burst Markov chain with a single error state.

    ``p_gb`` and ``p_bg`` are the per-symbol probabilities of moving from the
    good to the burst state and back. Inside a burst each bit is flipped with
    probability ``burst_flip``; the good state is error-free.
    """

    p_gb: float
    p_bg: float
    burst_flip: float = 0.5

    def __post_init__(self):
        _check_prob(self.p_gb, "p_gb")
        _check_prob(self.p_bg, "p_bg")
        _check_prob(self.burst_flip, "burst_flip")
        if self.p_gb + self.p_bg <= 0.0:
            raise DomainError("p_gb + p_bg must be positive")

    @classmethod
    def from_ber(cls, ber: float, mean_burst_length: float, burst_flip: float = 0.5):
        """Chain with stationary symbol error ratio ``ber`` and given mean burst length."""
        if not mean_burst_length >= 1.0:
            raise DomainError("mean burst length must be >= 1")
        burst_fraction = ber / burst_flip
        if not 0.0 <= burst_fraction < 1.0:
            raise DomainError(f"ber {ber} is not reachable with burst_flip {burst_flip}")
        p_bg = 1.0 / mean_burst_length
        return cls(p_bg * burst_fraction / (1.0 - burst_fraction), p_bg, burst_flip)

    @property
    def stationary_burst_fraction(self) -> float:
        return self.p_gb / (self.p_gb + self.p_bg)

    @property
    def mean_burst_length(self) -> float:
        return math.inf if self.p_bg == 0.0 else 1.0 / self.p_bg

    @property
    def symbol_ber(self) -> float:
        return self.stationary_burst_fraction * self.burst_flip


ChannelModel = Union[Bsc, MarySymmetric, BlockErasure, FritchmanBurst]


def model_name(model: ChannelModel) -> str:
    return {Bsc: "bsc", MarySymmetric: "msc", BlockErasure: "erasure", FritchmanBurst: "fritchman"}[
        type(model)
    ]


def worker_count(requested: Optional[int] = None) -> int:
    """Number of worker threads, capped by the CODING_LIMITS_THREADS variable."""
    cap = os.environ.get(THREADS_ENV)
    n = requested if requested is not None else (os.cpu_count() or 1)
    if cap:
        try:
            n = min(n, int(cap))
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return max(1, n)


def substream(seed: int, index: int) -> np.random.Generator:
    """Philox generator for substream ``index`` of ``seed``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


# -- per-block counting --------------------------------------------------------


@dataclass
class _Counts:
    """Additive sufficient statistics of a batch of frames."""

    k: int
    frames: int = 0
    frame_errors: int = 0
    erased: int = 0
    # sum over frames of (bit errors in frame)**2, for the BER standard error
    err_sq: int = 0
    bit_errors: np.ndarray = None
    # joint (u, u_hat) histogram per position, index [pos, u, u_hat]
    joint: np.ndarray = None

    def __post_init__(self):
        if self.bit_errors is None:
            self.bit_errors = np.zeros(self.k, dtype=np.int64)
        if self.joint is None:
            self.joint = np.zeros((self.k, 2, 2), dtype=np.int64)

    def add(self, other: "_Counts") -> "_Counts":
        self.frames += other.frames
        self.frame_errors += other.frame_errors
        self.erased += other.erased
        self.err_sq += other.err_sq
        self.bit_errors += other.bit_errors
        self.joint += other.joint
        return self


def _count(u, u_hat, frame_error, erased=0) -> _Counts:
    n, k = u.shape
    err = u != u_hat
    per_frame = err.sum(axis=1, dtype=np.int64)
    u1 = u.sum(axis=0, dtype=np.int64)
    v1 = u_hat.sum(axis=0, dtype=np.int64)
    both = (u & u_hat).sum(axis=0, dtype=np.int64)
    joint = np.empty((k, 2, 2), dtype=np.int64)
    joint[:, 1, 1] = both
    joint[:, 1, 0] = u1 - both
    joint[:, 0, 1] = v1 - both
    joint[:, 0, 0] = n - u1 - v1 + both
    return _Counts(
        k=k,
        frames=n,
        frame_errors=int(np.count_nonzero(frame_error)),
        erased=int(erased),
        err_sq=int(np.dot(per_frame, per_frame)),
        bit_errors=err.sum(axis=0, dtype=np.int64),
        joint=joint,
    )


def _random_bits(rng, shape):
    return rng.integers(0, 2, size=shape, dtype=np.uint8)


def _nonzero_patterns(rng, m, k):
    """``m`` patterns drawn uniformly from the ``2**k - 1`` nonzero k-bit words."""
    out = _random_bits(rng, (m, k))
    zero = ~out.any(axis=1)
    while zero.any():
        out[zero] = _random_bits(rng, (int(zero.sum()), k))
        zero = ~out.any(axis=1)
    return out


def _simulate_block(model, k, n, rng) -> _Counts:
    u = _random_bits(rng, (n, k))
    if isinstance(model, Bsc):
        e = (rng.random((n, k)) < model.crossover).astype(np.uint8)
        u_hat = u ^ e
        return _count(u, u_hat, e.any(axis=1))
    if isinstance(model, MarySymmetric):
        hit = rng.random(n) < model.fer
        e = np.zeros((n, k), dtype=np.uint8)
        e[hit] = _nonzero_patterns(rng, int(hit.sum()), k)
        return _count(u, u ^ e, hit)
    if isinstance(model, BlockErasure):
        hit = rng.random(n) < model.erasure_prob
        u_hat = u.copy()
        # erased frames count as frame errors; their bits are replaced by coin flips
        u_hat[hit] = _random_bits(rng, (int(hit.sum()), k))
        return _count(u, u_hat, hit, erased=hit.sum())
    raise TypeError(f"unsupported model {model!r}")


# -- Fritchman chain ----------------------------------------------------------


def _markov_states(rng, n, p_gb, p_bg, burst):
    """Burst-state indicator for ``n`` symbols, starting in state ``burst``.

    Sojourn times are geometric, so the chain is generated run by run.
    Returns the states and the state of the symbol following the last one.
    """
    states = np.empty(n, dtype=bool)
    pos = 0
    leave = (p_gb, p_bg)
    cycle = sum(1.0 / p if p > 0 else n for p in leave)
    while pos < n:
        m = int(min(n, 2 * (n - pos) / cycle + 8))
        runs = []
        for p in (leave[int(burst)], leave[int(not burst)]):
            runs.append(rng.geometric(p, size=m) if p > 0 else np.full(m, n, dtype=np.int64))
        lengths = np.empty(2 * m, dtype=np.int64)
        lengths[0::2], lengths[1::2] = runs
        ends = np.minimum(np.cumsum(lengths), n - pos)
        starts = np.concatenate(([0], ends[:-1]))
        flags = np.zeros(2 * m, dtype=bool)
        flags[0::2] = burst
        flags[1::2] = not burst
        seg = np.repeat(flags, ends - starts)
        states[pos : pos + seg.size] = seg
        # an exhausted batch ended on a switch out of ``not burst``, so the
        # next one starts in ``burst`` again
        pos += seg.size
    last = bool(states[-1])
    switch = rng.random() < leave[int(last)]
    return states, last != switch


def _start_state(model: FritchmanBurst, start: str, rng) -> bool:
    if start == "good":
        return False
    if start == "burst":
        return True
    if start == "stationary":
        return bool(rng.random() < model.stationary_burst_fraction)
    raise DomainError(f"start must be 'good', 'burst' or 'stationary', got {start!r}")


def _fritchman_chunks(model: FritchmanBurst, n_symbols, seed, start="stationary", chunk=STREAM_CHUNK):
    """Yield ``(rng, error_flags, burst_flags)`` for consecutive stream chunks.

    The chain state carries over between chunks; ``rng`` is handed out so the
    caller can draw further per-chunk randomness from the same stream.
    """
    rng = substream(seed, 0)
    burst = _start_state(model, start, rng)
    pos = 0
    while pos < n_symbols:
        m = min(chunk, n_symbols - pos)
        states, burst = _markov_states(rng, m, model.p_gb, model.p_bg, burst)
        errors = np.zeros(m, dtype=bool)
        errors[states] = rng.random(int(states.sum())) < model.burst_flip
        yield rng, errors, states
        pos += m


# -- reports -----------------------------------------------------------------


def _plugin_mi(joint):
    """Plug-in mutual information (bits) and delta-method standard error.

    ``joint`` has shape ``(..., 2, 2)`` of counts.
    """
    joint = np.asarray(joint, dtype=float)
    n = joint.sum(axis=(-2, -1))
    p = joint / n[..., None, None]
    px = p.sum(axis=-1, keepdims=True)
    py = p.sum(axis=-2, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        dens = np.where(p > 0.0, np.log2(p / (px * py)), 0.0)
    mi = np.sum(p * dens, axis=(-2, -1))
    second = np.sum(p * dens**2, axis=(-2, -1))
    se = np.sqrt(np.maximum(second - mi**2, 0.0) / n)
    return np.maximum(mi, 0.0), se


def estimate_mi_per_bit(source, output) -> float:
    """Plug-in estimate of the per-symbol mutual information of paired bit streams.

    Arrays of shape ``(n,)`` are one position; shape ``(frames, k)`` gives one
    2x2 histogram per position and the estimates are averaged over positions.
    A position where some bit value never occurs triggers a warning; its
    estimate still follows the ``0 log 0 = 0`` convention.
    """
    u = np.asarray(source)
    v = np.asarray(output)
    if u.shape != v.shape:
        raise DomainError(f"streams differ in shape: {u.shape} vs {v.shape}")
    if u.size < MIN_MI_SAMPLES:
        raise DomainError(f"need at least {MIN_MI_SAMPLES} paired symbols, got {u.size}")
    if u.ndim == 1:
        u, v = u[:, None], v[:, None]
    u = u.astype(bool)
    v = v.astype(bool)
    joint = np.empty((u.shape[1], 2, 2), dtype=np.int64)
    for a in (0, 1):
        for b in (0, 1):
            joint[:, a, b] = np.count_nonzero((u == a) & (v == b), axis=0)
    marg_u = joint.sum(axis=2)
    marg_v = joint.sum(axis=1)
    if np.any(marg_u == 0) or np.any(marg_v == 0):
        warnings.warn(
            "degenerate histogram: a bit value never occurs at some position",
            DegenerateHistogramWarning,
            stacklevel=2,
        )
    mi, _ = _plugin_mi(joint)
    return float(mi.mean())


class DegenerateHistogramWarning(UserWarning):
    """A symbol value was never observed in a mutual-information histogram."""


def _frame_mi_per_bit(frames, frame_errors, bit_errors, k):
    """Estimate ``I(U; U_hat) / k`` from error-pattern statistics.

    With a uniform source and an error pattern independent of it,
    ``I = k - H(E)``. Two upper bounds on ``H(E)`` are available from the
    counts: the sum of per-position bit entropies, and the entropy of the
    frame-error indicator plus the per-position entropies inside erroneous
    frames. The smaller one is used, so the estimate errs low. The first is
    exact for memoryless bit errors, the second for uniformly scrambled
    frames.
    """
    if frames == 0:
        return math.nan, math.nan
    pi = frame_errors / frames
    b = bit_errors / frames
    h_sum = float(np.sum(binary_entropy(b)))
    q = bit_errors / frame_errors if frame_errors else np.zeros(k)
    s = float(np.sum(binary_entropy(q)))
    h_split = binary_entropy(pi) + pi * s
    if h_sum <= h_split:
        inner = (b > 0.0) & (b < 1.0)
        bi = b[inner]
        var = float(np.sum(np.log2((1.0 - bi) / bi) ** 2 * bi * (1.0 - bi))) / frames / k**2
        # positions are treated as independent; exact when errors are memoryless
        return 1.0 - h_sum / k, math.sqrt(var)
    # delta method; degenerate proportions carry no sampling variance
    var = 0.0
    if 0.0 < pi < 1.0:
        d_pi = (math.log2((1.0 - pi) / pi) + s) / k
        var += d_pi**2 * pi * (1.0 - pi) / frames
    inner = (q > 0.0) & (q < 1.0)
    if frame_errors and inner.any():
        qi = q[inner]
        d_q = np.log2((1.0 - qi) / qi) * pi / k
        var += float(np.sum(d_q**2 * qi * (1.0 - qi))) / frame_errors
    return 1.0 - h_split / k, math.sqrt(var)


@dataclass(frozen=True)
class SimulationReport:
    """Statistics of one simulation run.

    ``mi_per_bit_estimate`` is the position-averaged plug-in mutual
    information between source and decided bits; ``frame_mi_per_bit_estimate``
    estimates the whole-frame mutual information per bit. ``erased_fraction``
    is the erased-frame ratio (block erasure) or the burst-state symbol ratio
    (Fritchman) and NaN for the other models. The ``*_se`` fields are
    estimated standard errors.
    """

    model: str
    frames: int
    k: int
    seed: int
    empirical_ber: float
    empirical_fer: float
    conditional_burst_ber: float
    per_position_ber: np.ndarray = field(repr=False)
    mi_per_bit_estimate: float
    frame_mi_per_bit_estimate: float
    erased_fraction: float
    ber_se: float
    fer_se: float
    mi_se: float
    frame_mi_se: float

    def to_record(self) -> str:
        """Flat ``name=value`` text, one field per line."""
        return "".join(f"{name}={value}\n" for name, value in self._items())

    def csv_header(self) -> str:
        return ",".join(name for name, _ in self._items())

    def to_csv_row(self) -> str:
        return ",".join(value for _, value in self._items())

    def _items(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "per_position_ber":
                yield f.name, ";".join(_fmt(x) for x in v)
            elif isinstance(v, float):
                yield f.name, _fmt(v)
            else:
                yield f.name, str(v)

    @classmethod
    def from_record(cls, text: str) -> "SimulationReport":
        raw = dict(line.split("=", 1) for line in text.splitlines() if line.strip())
        kwargs = {}
        for f in fields(cls):
            s = raw[f.name]
            if f.name == "per_position_ber":
                kwargs[f.name] = np.array([float(x) for x in s.split(";")]) if s else np.zeros(0)
            elif f.name == "model":
                kwargs[f.name] = s
            elif f.name in ("frames", "k", "seed"):
                kwargs[f.name] = int(s)
            else:
                kwargs[f.name] = float(s)
        return cls(**kwargs)

    def __eq__(self, other):
        if not isinstance(other, SimulationReport):
            return NotImplemented
        return self.to_record() == other.to_record()

    __hash__ = None


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _report(model, counts: _Counts, seed, erased_fraction) -> SimulationReport:
    n, k = counts.frames, counts.k
    total_bits = n * k
    bit_err_total = int(counts.bit_errors.sum())
    ber = bit_err_total / total_bits
    fer = counts.frame_errors / n
    cond = bit_err_total / (counts.frame_errors * k) if counts.frame_errors else math.nan
    mean_c = bit_err_total / n
    var_frame_ber = max(counts.err_sq / n - mean_c**2, 0.0) / k**2
    mi, mi_se = _plugin_mi(counts.joint)
    frame_mi, frame_mi_se = _frame_mi_per_bit(n, counts.frame_errors, counts.bit_errors, k)
    return SimulationReport(
        model=model_name(model),
        frames=n,
        k=k,
        seed=seed,
        empirical_ber=ber,
        empirical_fer=fer,
        conditional_burst_ber=cond,
        per_position_ber=counts.bit_errors / n,
        mi_per_bit_estimate=float(mi.mean()),
        frame_mi_per_bit_estimate=frame_mi,
        erased_fraction=erased_fraction,
        ber_se=math.sqrt(var_frame_ber / n),
        fer_se=math.sqrt(fer * (1.0 - fer) / n),
        # positions may be correlated; averaging the errors is the safe side
        mi_se=float(mi_se.mean()),
        frame_mi_se=frame_mi_se,
    )


def frames_per_block(k: int) -> int:
    return max(1, BLOCK_BITS // k)


def simulate(
    model: ChannelModel,
    k: int,
    frames: int,
    seed: int,
    workers: Optional[int] = None,
    start: str = "stationary",
) -> SimulationReport:
    """Pass ``frames`` uniform random k-bit source frames through ``model``.

    The report is a deterministic function of ``(model, k, frames, seed)``;
    ``workers`` only changes how blocks are scheduled. ``start`` selects the
    initial Fritchman state ('stationary', 'good' or 'burst').
    """
    _check_k(k)
    k = int(k)
    if int(frames) != frames or frames < 1:
        raise DomainError(f"frames must be a positive integer, got {frames!r}")
    frames = int(frames)
    if isinstance(model, (MarySymmetric, BlockErasure)) and model.k != k:
        raise DomainError(f"model frame length {model.k} does not match k={k}")

    if isinstance(model, FritchmanBurst):
        counts = _Counts(k=k)
        burst_symbols = 0
        # chunks hold whole frames
        chunk = max(1, STREAM_CHUNK // k) * k
        for rng, errors, states in _fritchman_chunks(model, frames * k, seed, start, chunk):
            e = errors.astype(np.uint8).reshape(-1, k)
            u = _random_bits(rng, e.shape)
            counts.add(_count(u, u ^ e, e.any(axis=1)))
            burst_symbols += int(states.sum())
        return _report(model, counts, seed, burst_symbols / (frames * k))

    if not isinstance(model, (Bsc, MarySymmetric, BlockErasure)):
        raise TypeError(f"unsupported model {model!r}")
    per_block = frames_per_block(k)
    n_blocks = -(-frames // per_block)

    def run(j):
        n = min(per_block, frames - j * per_block)
        return _simulate_block(model, k, n, substream(seed, j))

    counts = _Counts(k=k)
    n_workers = min(worker_count(workers), n_blocks)
    if n_workers > 1:
        with ThreadPoolExecutor(n_workers) as pool:
            for c in pool.map(run, range(n_blocks)):
                counts.add(c)
    else:
        for j in range(n_blocks):
            counts.add(run(j))
    erased = counts.erased / frames if isinstance(model, BlockErasure) else math.nan
    return _report(model, counts, seed, erased)


# -- Fritchman stream statistics --------------------------------------------


@dataclass(frozen=True)
class BurstStreamReport:
    """Symbol-level statistics of a simulated Fritchman stream.

    ``genie_erasure_rate`` is the rate left after erasing every burst symbol
    with perfect knowledge of the state. ``capacity_estimate`` is
    ``1 - H(E)``, with ``H(E)`` the entropy rate of the error sequence
    estimated from the simulated path by the forward recursion; it is the
    capacity of the channel for a receiver that has to infer the bursts.
    """

    symbols: int
    seed: int
    symbol_ber: float
    burst_fraction: float
    stationary_burst_fraction: float
    mean_burst_length: float
    genie_erasure_rate: float
    error_entropy_rate: float
    capacity_estimate: float

    def to_record(self) -> str:
        return "".join(f"{k}={_fmt(v) if isinstance(v, float) else v}\n" for k, v in asdict(self).items())


def _mat_mul(a, b):
    # batched 2x2 products, matrices stored as (..., 4) = [m00, m01, m10, m11]
    return np.stack(
        [
            a[..., 0] * b[..., 0] + a[..., 1] * b[..., 2],
            a[..., 0] * b[..., 1] + a[..., 1] * b[..., 3],
            a[..., 2] * b[..., 0] + a[..., 3] * b[..., 2],
            a[..., 2] * b[..., 1] + a[..., 3] * b[..., 3],
        ],
        axis=-1,
    )


def _log_product(mats):
    """Product of a sequence of non-negative 2x2 matrices as ``(M, log2 scale)``.

    Pairwise tree reduction; each level renormalizes by the largest entry.
    """
    log_scale = 0.0
    while mats.shape[0] > 1:
        if mats.shape[0] % 2:
            mats = np.concatenate([mats, np.array([[1.0, 0.0, 0.0, 1.0]])])
        mats = _mat_mul(mats[0::2], mats[1::2])
        peak = mats.max(axis=1)
        log_scale += float(np.sum(np.log2(peak)))
        mats = mats / peak[:, None]
    return mats[0], log_scale


class _ForwardEntropy:
    """Accumulates ``-log2 P(e_1..e_n)`` of an error path under the chain."""

    def __init__(self, model: FritchmanBurst, start_prob_burst: float):
        a = np.array([[1 - model.p_gb, model.p_gb], [model.p_bg, 1 - model.p_bg]])
        f = model.burst_flip
        emit = np.array([[1.0, 1.0 - f], [0.0, f]])  # [error value, state]
        # step matrix for symbol value e: A @ diag(emit[e])
        self.step = np.array([(a * emit[e][None, :]).ravel() for e in (0, 1)])
        self.emit = emit
        self.start = np.array([1.0 - start_prob_burst, start_prob_burst])
        self.row = None
        self.neg_log2 = 0.0
        self.n = 0

    def feed(self, errors):
        e = errors.astype(np.intp)
        if self.row is None:
            self.row = self.start * self.emit[e[0]]
            e = e[1:]
        if e.size:
            prod, log_scale = _log_product(self.step[e])
            self.row = self.row @ prod.reshape(2, 2)
            self.neg_log2 -= log_scale
        total = self.row.sum()
        self.neg_log2 -= math.log2(total)
        self.row = self.row / total
        self.n += errors.size

    @property
    def rate(self) -> float:
        return self.neg_log2 / self.n


def simulate_fritchman_stream(
    model: FritchmanBurst, symbols: int, seed: int, start: str = "stationary"
) -> BurstStreamReport:
    """Simulate ``symbols`` channel uses of a Fritchman burst channel."""
    if int(symbols) != symbols or symbols < 1:
        raise DomainError(f"symbols must be a positive integer, got {symbols!r}")
    symbols = int(symbols)
    start_prob = {"good": 0.0, "burst": 1.0}.get(start, model.stationary_burst_fraction)
    fwd = _ForwardEntropy(model, start_prob)
    n_err = 0
    n_burst = 0
    n_runs = 0
    prev_last = False
    for _, errors, states in _fritchman_chunks(model, symbols, seed, start):
        n_err += int(errors.sum())
        n_burst += int(states.sum())
        # burst runs = rising edges, counting across chunk boundaries
        n_runs += int(np.count_nonzero(states[1:] & ~states[:-1])) + int(states[0] and not prev_last)
        prev_last = bool(states[-1])
        fwd.feed(errors)
    h = fwd.rate
    burst_fraction = n_burst / symbols
    return BurstStreamReport(
        symbols=symbols,
        seed=seed,
        symbol_ber=n_err / symbols,
        burst_fraction=burst_fraction,
        stationary_burst_fraction=model.stationary_burst_fraction,
        mean_burst_length=n_burst / n_runs if n_runs else math.nan,
        genie_erasure_rate=1.0 - burst_fraction,
        error_entropy_rate=h,
        capacity_estimate=1.0 - h,
    )


# -- verification against the bounds -------------------------------------------


@dataclass(frozen=True)
class Claim:
    name: str
    observed: float
    bound: float
    slack: float
    passed: bool

    @property
    def margin(self) -> float:
        """Distance to violation; negative when the claim fails."""
        if self.name.startswith("mi"):
            return self.bound + self.slack - self.observed
        return self.observed - (self.bound - self.slack)


@dataclass(frozen=True)
class VerificationSummary:
    claims: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def __getitem__(self, name) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)


def verify_against_bounds(report: SimulationReport, op: OperatingPoint) -> VerificationSummary:
    """Check a simulated end-to-end channel against the bounds at ``op``.

    Claims, each with a slack of three standard errors:

    * ``mi_per_bit``: frame mutual information per bit at most ``C/R``;
    * ``ber``: BER at least the minimum BER;
    * ``fer``: FER at least the minimum FER for k-bit frames.

    Failures are returned as data, never raised.
    """
    ratio = op.ratio
    mi_slack = SLACK_SIGMAS * report.frame_mi_se
    ber_bound = ber_lower_bound(op)
    fer_bound = fer_lower_bound(op, report.k)
    ber_slack = SLACK_SIGMAS * report.ber_se
    fer_slack = SLACK_SIGMAS * report.fer_se
    # rounding guard so exact-equality cases do not fail on the last ulp
    tiny = 1e-12
    claims = (
        Claim("mi_per_bit", report.frame_mi_per_bit_estimate, ratio, mi_slack,
              report.frame_mi_per_bit_estimate <= ratio + mi_slack + tiny),
        Claim("ber", report.empirical_ber, ber_bound, ber_slack,
              report.empirical_ber >= ber_bound - ber_slack - tiny),
        Claim("fer", report.empirical_fer, fer_bound, fer_slack,
              report.empirical_fer >= fer_bound - fer_slack - tiny),
    )
    return VerificationSummary(claims)
