"""Discrete memoryless channels: mutual information, capacity, constructions.

A channel is a row-stochastic transition matrix ``W[x, y] = Pr(Y=y | X=x)``.
The M-ary symmetric channel over k-bit frames has ``2**k`` symbols; its
explicit matrix is only built for small ``k``, everything else goes through
closed forms.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .entropy import binary_entropy, log2_pow2_minus_one, m_ary_entropy_k
from .errors import ConvergenceError, DomainError

ROW_SUM_TOL = 1e-12
INGEST_ROW_SUM_TOL = 1e-9
MAX_EXPLICIT_K = 12


@dataclass(frozen=True)
class Dmc:
    """Discrete memoryless channel given by its transition matrix.

    Rows are indexed by input symbol and columns by output symbol.
    """

    transition: np.ndarray

    def __post_init__(self):
        w = np.array(self.transition, dtype=float)
        if w.ndim != 2:
            raise DomainError("transition matrix must be two-dimensional")
        if w.shape[0] < 2 or w.shape[1] < 2:
            raise DomainError(f"need at least 2 inputs and 2 outputs, got shape {w.shape}")
        if not np.all(np.isfinite(w)) or np.any(w < 0.0):
            raise DomainError("transition probabilities must be finite and non-negative")
        sums = w.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > ROW_SUM_TOL)
        if bad.size:
            raise DomainError(f"row {bad[0]} sums to {sums[bad[0]]!r}, not 1")
        w.setflags(write=False)
        object.__setattr__(self, "transition", w)

    @property
    def input_cardinality(self) -> int:
        return self.transition.shape[0]

    @property
    def output_cardinality(self) -> int:
        return self.transition.shape[1]


@dataclass(frozen=True)
class CapacityResult:
    """Outcome of a capacity computation.

    ``capacity`` is the mutual information at ``argmax_input``; the true
    capacity lies in ``[capacity, capacity + residual]``.
    """

    capacity: float
    argmax_input: np.ndarray = field(repr=False)
    iterations: int
    residual: float


def check_input_distribution(probs, size=None) -> np.ndarray:
    """Validate an input distribution and return it as a float array."""
    q = np.asarray(probs, dtype=float)
    if q.ndim != 1:
        raise DomainError("input distribution must be a vector")
    if size is not None and q.size != size:
        raise DomainError(f"input distribution has {q.size} entries, channel has {size} inputs")
    if np.any(q < 0.0) or abs(q.sum() - 1.0) > ROW_SUM_TOL:
        raise DomainError("input distribution must be non-negative and sum to 1")
    return q


def uniform_input(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def mutual_information(channel: Dmc, input_dist) -> float:
    """I(X;Y) in bits by the explicit double sum over inputs and outputs.

    Terms with zero joint probability contribute nothing.
    """
    w = channel.transition
    q = check_input_distribution(input_dist, channel.input_cardinality)
    joint = q[:, None] * w
    out = joint.sum(axis=0)
    mask = joint > 0.0
    ratio = joint[mask] / (q[:, None] * out[None, :])[mask]
    return max(float(np.sum(joint[mask] * np.log2(ratio))), 0.0)


def _divergences(w, out):
    # D(W(.|x) || out) for each input x, in nats
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(w > 0.0, w * np.log(w / out[None, :]), 0.0)
    return terms.sum(axis=1)


def capacity_blahut_arimoto(
    channel: Dmc,
    tolerance: float = 1e-9,
    max_iterations: int = 100_000,
    initial=None,
) -> CapacityResult:
    """Channel capacity by the Blahut-Arimoto alternating maximization.

    At every iterate ``q`` the capacity is bracketed by

        sum_x q(x) D_x  <=  C  <=  max_x D_x,

    with ``D_x`` the divergence between row ``x`` and the output law induced
    by ``q``. The loop stops once the bracket is narrower than ``tolerance``.

    Raises
    ------
    ConvergenceError
        If the bracket is still wider than ``tolerance`` after
        ``max_iterations`` updates; the exception carries the last gap.
    """
    if not tolerance > 0.0:
        raise DomainError(f"tolerance must be positive, got {tolerance!r}")
    w = channel.transition
    q = uniform_input(channel.input_cardinality) if initial is None else (
        check_input_distribution(initial, channel.input_cardinality).copy()
    )
    ln2 = math.log(2.0)
    gap = math.inf
    for it in range(max_iterations + 1):
        d = _divergences(w, q @ w)
        lower = float(q @ d) / ln2
        upper = float(d.max()) / ln2
        gap = upper - lower
        if gap < tolerance:
            return CapacityResult(max(lower, 0.0), q, it, max(gap, 0.0))
        if it == max_iterations:
            break
        q = q * np.exp(d - d.max())
        q /= q.sum()
    raise ConvergenceError(
        f"Blahut-Arimoto did not converge in {max_iterations} iterations (gap {gap:.3e} bits)",
        gap,
        max_iterations,
    )


def make_bsc(crossover: float) -> Dmc:
    """Binary symmetric channel with the given crossover probability."""
    if not 0.0 <= crossover <= 1.0:
        raise DomainError(f"crossover must lie in [0, 1], got {crossover!r}")
    p = float(crossover)
    return Dmc(np.array([[1.0 - p, p], [p, 1.0 - p]]))


def make_bec(erasure: float) -> Dmc:
    """Binary erasure channel; outputs are (0, erasure, 1)."""
    if not 0.0 <= erasure <= 1.0:
        raise DomainError(f"erasure probability must lie in [0, 1], got {erasure!r}")
    e = float(erasure)
    return Dmc(np.array([[1.0 - e, e, 0.0], [0.0, e, 1.0 - e]]))


def make_msc(k: int, fer: float) -> Dmc:
    """M-ary symmetric channel with ``M = 2**k`` and symbol error rate ``fer``.

    The diagonal holds ``1 - fer`` and every off-diagonal entry
    ``fer / (2**k - 1)``. Only available for ``k <= MAX_EXPLICIT_K``.
    """
    if not 1 <= k <= MAX_EXPLICIT_K:
        raise DomainError(
            f"explicit M-SC matrices need 1 <= k <= {MAX_EXPLICIT_K}, got k={k}; "
            "use msc_mutual_information for larger frames"
        )
    if not 0.0 <= fer <= 1.0:
        raise DomainError(f"fer must lie in [0, 1], got {fer!r}")
    m = 1 << k
    w = np.full((m, m), fer / (m - 1))
    np.fill_diagonal(w, 1.0 - fer)
    return Dmc(w)


def _check_frame(k, fer):
    if int(k) != k or k < 1:
        raise DomainError(f"frame length k must be a positive integer, got {k!r}")
    if not 0.0 <= fer <= 1.0:
        raise DomainError(f"fer must lie in [0, 1], got {fer!r}")


def msc_mutual_information(k: int, fer: float) -> float:
    """Mutual information per frame of the 2**k-ary symmetric channel.

    Uniform input, closed form ``k - e_{2^k}(fer)``; valid for any ``k``.
    """
    _check_frame(k, fer)
    return k - m_ary_entropy_k(fer, int(k))


def msc_mi_per_bit(k: int, fer: float, limit: bool = False) -> float:
    """Mutual information of the 2**k-ary symmetric channel per source bit.

    With ``limit=True`` returns the large-frame value ``1 - fer``.
    """
    if limit:
        if not 0.0 <= fer <= 1.0:
            raise DomainError(f"fer must lie in [0, 1], got {fer!r}")
        return 1.0 - fer
    _check_frame(k, fer)
    k = int(k)
    # 1 + ((1-f)/k) log2(1-f) + (f/k) log2(f/(2^k-1)), grouped as 1 - e_M(f)/k
    return 1.0 - (binary_entropy(fer) + fer * log2_pow2_minus_one(k)) / k


# -- matrix files -----------------------------------------------------------


class DmcFileError(DomainError):
    """Malformed channel matrix file; ``line`` is 1-based (0 if not line-specific)."""

    def __init__(self, message, line=0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def parse_dmc(text: str) -> Dmc:
    """Parse the plain-text matrix format.

    The first non-blank line holds ``inputs outputs``; each following line is
    one input row of whitespace-separated probabilities. Rows must sum to one
    within 1e-9 and are renormalized; all-zero columns are rejected.
    """
    rows = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise DmcFileError("header must be 'inputs outputs'", lineno)
            try:
                header = tuple(int(f) for f in fields)
            except ValueError:
                raise DmcFileError("header entries must be integers", lineno) from None
            if header[0] < 2 or header[1] < 2:
                raise DmcFileError("need at least 2 inputs and 2 outputs", lineno)
            continue
        if len(rows) == header[0]:
            raise DmcFileError(f"more than {header[0]} rows", lineno)
        try:
            row = [float(f) for f in fields]
        except ValueError:
            raise DmcFileError("entries must be decimal numbers", lineno) from None
        if len(row) != header[1]:
            raise DmcFileError(f"expected {header[1]} entries, got {len(row)}", lineno)
        if any(not math.isfinite(v) or v < 0.0 for v in row):
            raise DmcFileError("probabilities must be finite and non-negative", lineno)
        total = math.fsum(row)
        if abs(total - 1.0) > INGEST_ROW_SUM_TOL:
            raise DmcFileError(f"row sums to {total!r}, not 1", lineno)
        rows.append((lineno, [v / total for v in row]))
    if header is None:
        raise DmcFileError("empty channel file")
    if len(rows) != header[0]:
        raise DmcFileError(f"expected {header[0]} rows, got {len(rows)}")
    w = np.array([r for _, r in rows])
    dead = np.flatnonzero(w.sum(axis=0) == 0.0)
    if dead.size:
        raise DmcFileError(f"output column {dead[0]} has zero probability for every input")
    return Dmc(w)


def read_dmc(path: str | os.PathLike) -> Dmc:
    with open(path, encoding="utf-8") as fh:
        return parse_dmc(fh.read())


def format_dmc(channel: Dmc) -> str:
    w = channel.transition
    lines = [f"{w.shape[0]} {w.shape[1]}"]
    lines += [" ".join(repr(float(v)) for v in row) for row in w]
    return "\n".join(lines) + "\n"


def write_dmc(channel: Dmc, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_dmc(channel))
