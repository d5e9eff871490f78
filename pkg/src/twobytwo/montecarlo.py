"""Seeded sampling of (X, Y) from a table and Monte Carlo cross-checks.

Random source: numpy's PCG64 bit generator. A run of ``n`` draws is cut
into shards of ``SHARD_SIZE`` draws; shard ``k`` uses the ``k``-th child of
``SeedSequence(seed)``. Shard sizes are even, so consecutive draw pairs
never straddle a shard, and per-shard integer tallies merge by summation
in shard order. Results depend only on (table, n, seed).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .measures import concordance, delta
from .table import ProbTable

SHARD_SIZE = 1 << 18
#: acceptance band, in standard errors
N_SIGMA = 4.0


@dataclass(frozen=True)
class SampleEstimate:
    estimate: float
    std_error: float
    n: int
    seed: int

    def within(self, target: float, n_sigma: float = N_SIGMA) -> bool:
        return abs(self.estimate - target) <= n_sigma * self.std_error


def _cumulative(t: ProbTable) -> np.ndarray:
    p, q, r, _ = (float(c) for c in t.cells)
    return np.array([p, p + q, p + q + r], dtype=np.float64)


def _shards(n: int, seed: int):
    children = np.random.SeedSequence(seed).spawn(max(1, -(-n // SHARD_SIZE)))
    for k, child in enumerate(children):
        yield child, min(SHARD_SIZE, n - k * SHARD_SIZE)


def _shard_cells(child, size, cum):
    u = np.random.Generator(np.random.PCG64(child)).random(size)
    return _kernels.draw_cells(u, cum)


def sample_cells(t: ProbTable, n: int, seed: int) -> np.ndarray:
    """Cell index (0..3 for p, q, r, s) of each of n i.i.d. draws."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cum = _cumulative(t)
    return np.concatenate([_shard_cells(c, size, cum) for c, size in _shards(n, seed)])


def sample_pairs(t: ProbTable, n: int, seed: int):
    """n i.i.d. draws of (x, y) as two uint8 arrays."""
    cells = sample_cells(t, n, seed)
    x = (cells < 2).astype(np.uint8)
    y = ((cells == 0) | (cells == 2)).astype(np.uint8)
    return x, y


@dataclass(frozen=True)
class Tally:
    n: int
    counts: tuple[int, int, int, int]
    concordant: int
    discordant: int

    @property
    def pairs(self) -> int:
        return self.n // 2


def tally(t: ProbTable, n: int, seed: int, workers: int = 1) -> Tally:
    cum = _cumulative(t)

    def one(job):
        child, size = job
        return _kernels.tally(_shard_cells(child, size, cum))

    jobs = list(_shards(n, seed))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(one, jobs))
    else:
        parts = [one(j) for j in jobs]
    counts = np.zeros(4, dtype=np.int64)
    conc = disc = 0
    for c, cc, dd in parts:
        counts += c
        conc += cc
        disc += dd
    return Tally(n, tuple(int(k) for k in counts), conc, disc)


def _proportion(k: int, m: int, seed: int) -> SampleEstimate:
    f = k / m
    return SampleEstimate(f, math.sqrt(f * (1 - f) / m), m, seed)


def covariance_from_tally(tl: Tally, seed: int) -> SampleEstimate:
    n = tl.n
    n11, n10, n01, n00 = tl.counts
    mx = (n11 + n10) / n
    my = (n11 + n01) / n
    cov = n11 / n - mx * my
    # per-draw products (x - mx)(y - my), one value per cell
    z = ((1 - mx) * (1 - my), -(1 - mx) * my, -mx * (1 - my), mx * my)
    var = sum(k * (zc - cov) ** 2 for k, zc in zip(tl.counts, z)) / (n - 1)
    return SampleEstimate(cov, math.sqrt(var / n), n, seed)


def estimate_covariance(t: ProbTable, n: int, seed: int) -> SampleEstimate:
    """Plug-in covariance of the sampled indicators."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return covariance_from_tally(tally(t, n, seed), seed)


def estimate_concordance(t: ProbTable, n: int, seed: int):
    """Concordant and discordant frequencies over n // 2 consecutive draw pairs."""
    if n < 2:
        raise ValueError("n must be at least 2")
    tl = tally(t, n, seed)
    return (_proportion(tl.concordant, tl.pairs, seed),
            _proportion(tl.discordant, tl.pairs, seed))


def estimate_mismatch(t: ProbTable, n: int, seed: int) -> SampleEstimate:
    """Frequency of x != y, an estimate of q + r."""
    if n < 2:
        raise ValueError("n must be at least 2")
    tl = tally(t, n, seed)
    return _proportion(tl.counts[1] + tl.counts[2], n, seed)


@dataclass(frozen=True)
class CheckRow:
    name: str
    estimate: SampleEstimate
    closed_form: float

    @property
    def band(self) -> float:
        return N_SIGMA * self.estimate.std_error

    @property
    def passed(self) -> bool:
        return self.estimate.within(self.closed_form)


def cross_check(t: ProbTable, n: int, seed: int, workers: int = 1) -> list[CheckRow]:
    """Covariance, concordance, discordance and mismatch against closed forms."""
    if n < 2:
        raise ValueError("n must be at least 2")
    ft = t.to_float()
    tl = tally(ft, n, seed, workers)
    conc, disc = concordance(ft)
    return [
        CheckRow("covariance", covariance_from_tally(tl, seed), delta(ft)),
        CheckRow("concordance", _proportion(tl.concordant, tl.pairs, seed), conc),
        CheckRow("discordance", _proportion(tl.discordant, tl.pairs, seed), disc),
        CheckRow("mismatch", _proportion(tl.counts[1] + tl.counts[2], n, seed), ft.q + ft.r),
    ]
