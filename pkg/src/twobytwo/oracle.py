"""Brute-force checks in exact arithmetic.

Nothing here calls the closed-form conditional or pair-count formulas it
is meant to check: finite spaces are materialized as integer labels,
conditionals are obtained by filtering and counting, and ordered pairs are
enumerated one by one.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, NamedTuple

import numpy as np

from . import _kernels
from .errors import EmptyConditioningClass, NotExact
from .measures import delta, full_report
from .table import EXACT, CountTable, ProbTable, Sign, SignPolicy, from_counts, from_probs

Direction = Literal["AgivenB", "BgivenA"]

# class labels of materialized elements
P, Q, R, S = 0, 1, 2, 3
_IN_A = np.array([True, True, False, False])
_IN_B = np.array([True, False, True, False])


def materialize(c: CountTable) -> np.ndarray:
    """One class label per element of the finite uniform space."""
    return np.repeat(np.arange(4, dtype=np.int8), c.counts)


class PairCount(NamedTuple):
    favorable: int
    unfavorable: int
    direction: str


def pair_counts(c: CountTable, direction: Direction = "AgivenB") -> PairCount:
    """Favorable and unfavorable ordered pairs, counted by enumeration.

    For ``AgivenB`` the pairs are (u, v) with u in B and v in not-B; a pair
    is favorable when u is in A and v is not, unfavorable when the reverse.
    ``BgivenA`` swaps the roles of A and B.
    """
    labels = materialize(c)
    if direction == "AgivenB":
        cond, target = _IN_B[labels], _IN_A[labels]
    elif direction == "BgivenA":
        cond, target = _IN_A[labels], _IN_B[labels]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    first = target[cond]
    second = target[~cond]
    if first.size == 0 or second.size == 0:
        raise EmptyConditioningClass(f"{direction}: a conditioning class of {c} is empty")
    fav, unf = _kernels.enumerate_pairs(np.ascontiguousarray(first), np.ascontiguousarray(second))
    return PairCount(fav, unf, direction)


def two_draw_enumeration(t: ProbTable):
    """(P(concordant), P(discordant)) summed over all 16 ordered draw pairs."""
    outcomes = {(1, 1): t.p, (1, 0): t.q, (0, 1): t.r, (0, 0): t.s}
    conc = 0
    disc = 0
    for (o1, w1), (o2, w2) in itertools.product(outcomes.items(), repeat=2):
        if {o1, o2} == {(1, 1), (0, 0)}:
            conc += w1 * w2
        elif {o1, o2} == {(1, 0), (0, 1)}:
            disc += w1 * w2
    return conc, disc


class Conditionals(NamedTuple):
    a_given_b: Fraction
    a_given_not_b: Fraction
    b_given_a: Fraction
    b_given_not_a: Fraction


def brute_force_conditionals(c: CountTable) -> Conditionals:
    """All four conditionals by filtering and counting materialized elements."""
    elements = [(bool(_IN_A[k]), bool(_IN_B[k])) for k in materialize(c)]

    def cond(event, given):
        pool = [e for e in elements if given(e)]
        if not pool:
            raise EmptyConditioningClass(f"empty conditioning class in {c}")
        return Fraction(sum(1 for e in pool if event(e)), len(pool))

    in_a = lambda e: e[0]
    in_b = lambda e: e[1]
    return Conditionals(
        cond(in_a, in_b),
        cond(in_a, lambda e: not e[1]),
        cond(in_b, in_a),
        cond(in_b, lambda e: not e[0]),
    )


def rational_rank(t: ProbTable) -> int:
    """Rank of the cell matrix by exact row reduction."""
    if not t.exact:
        raise NotExact("rational_rank needs an exact table")
    rows = [[t.p, t.q], [t.r, t.s]]
    rank = 0
    for col in range(2):
        pivot = next((i for i in range(rank, 2) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(2):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# --------------------------------------------------------------------------
# exhaustive sweep


@dataclass
class SweepSummary:
    n_max: int
    tables_checked: int = 0
    by_sign: dict = field(default_factory=lambda: {"negative": 0, "zero": 0, "positive": 0})
    failures: list = field(default_factory=list)

    @property
    def expected_tables(self) -> int:
        # compositions of N into 4 positive parts, summed over N = 4..n_max
        return math.comb(self.n_max, 4)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "SweepSummary") -> None:
        self.tables_checked += other.tables_checked
        for k, v in other.by_sign.items():
            self.by_sign[k] += v
        self.failures.extend(other.failures)

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "tables": self.tables_checked,
            "failures": len(self.failures),
            "by_sign": dict(self.by_sign),
            "failed_tables": self.failures,
        }


def check_table(c: CountTable) -> list[str]:
    """Every way the sign equivalence could fail on one table; [] when it holds."""
    problems = []
    t = from_counts(c)
    d = Sign.of(delta(t))
    cond = brute_force_conditionals(c)
    rel_a = Sign.of(cond.a_given_b - cond.a_given_not_b)
    rel_b = Sign.of(cond.b_given_a - cond.b_given_not_a)
    if rel_a != d:
        problems.append(f"P(A|B) vs P(A|not B) is {rel_a.label}, delta {d.label}")
    if rel_b != d:
        problems.append(f"P(B|A) vs P(B|not A) is {rel_b.label}, delta {d.label}")
    for direction in ("AgivenB", "BgivenA"):
        pc = pair_counts(c, direction)
        if Sign.of(pc.favorable - pc.unfavorable) != d:
            problems.append(f"pair counts {direction} disagree with delta")
    report = full_report(t, EXACT)
    if not report.consistent:
        problems.append("dissenting measures: " + ", ".join(report.dissenting))
    return problems


def _sweep_np(n_p: int, n_max: int) -> SweepSummary:
    out = SweepSummary(n_max)
    for n_q in range(1, n_max - n_p - 1):
        for n_r in range(1, n_max - n_p - n_q):
            for n_s in range(1, n_max - n_p - n_q - n_r + 1):
                c = CountTable(n_p, n_q, n_r, n_s)
                problems = check_table(c)
                out.tables_checked += 1
                out.by_sign[Sign.of(n_p * n_s - n_q * n_r).label] += 1
                if problems:
                    out.failures.append({"counts": list(c.counts), "problems": problems})
    return out


def iter_positive_tables(n_max: int):
    """Every CountTable with all cells >= 1 and total <= n_max, lexicographic."""
    for n_p in range(1, n_max - 2):
        for n_q in range(1, n_max - n_p - 1):
            for n_r in range(1, n_max - n_p - n_q):
                for n_s in range(1, n_max - n_p - n_q - n_r + 1):
                    yield CountTable(n_p, n_q, n_r, n_s)


def exhaustive_sign_check(n_max: int, workers: int = 1) -> SweepSummary:
    """Check the sign equivalence on every positive table with N <= n_max.

    Work is split by n_p; partial summaries merge in n_p order, so the
    result does not depend on ``workers``.
    """
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    prefixes = range(1, n_max - 2)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_sweep_np, prefixes, itertools.repeat(n_max)))
    else:
        parts = [_sweep_np(n_p, n_max) for n_p in prefixes]
    summary = SweepSummary(n_max)
    for part in parts:
        summary.merge(part)
    return summary


# --------------------------------------------------------------------------
# float sweeps


def sample_simplex(n: int, rng: np.random.Generator, floor: float = 1e-6) -> np.ndarray:
    """n tables uniform on the open simplex, rejecting any cell below ``floor``."""
    out = np.empty((0, 4))
    while out.shape[0] < n:
        draw = rng.dirichlet(np.ones(4), size=n - out.shape[0])
        out = np.vstack([out, draw[(draw >= floor).all(axis=1)]])
    return out


def random_sign_sweep(n: int, seed: int = 0, zero_band: float = 1e-12):
    """Vectorized float check of the closed-form signs on n random tables.

    Returns (tables checked, indices of tables whose sign row is not constant).
    """
    cells = sample_simplex(n, np.random.default_rng(seed))
    signs = _kernels.batch_signs(cells, zero_band)
    bad = np.nonzero((signs != signs[:, :1]).any(axis=1))[0]
    return cells.shape[0], bad


def nearest_rational(cells, denominator: int = 10**6) -> ProbTable:
    """Round p, q, r to multiples of 1/denominator and close the sum with s."""
    p, q, r = (Fraction(round(x * denominator), denominator) for x in cells[:3])
    return ProbTable(p, q, r, 1 - p - q - r)


def continuity_bridge(n: int, seed: int = 0, denominator: int = 10**6,
                      policy: SignPolicy = SignPolicy.floating()):
    """Compare float-mode signs with exact signs on the nearest rational table.

    Returns a list of (cells, measure) mismatches; empty when every measure
    agrees on every table.
    """
    cells = sample_simplex(n, np.random.default_rng(seed), floor=10.0 / denominator)
    mismatches = []
    for row in cells:
        ft = from_probs(*row, policy=policy)
        et = nearest_rational(row, denominator)
        fs = full_report(ft, policy).signs()
        es = full_report(et, EXACT).signs()
        for name, sign in fs.items():
            if name in es and es[name] != sign:
                mismatches.append((tuple(row), name))
    return mismatches
