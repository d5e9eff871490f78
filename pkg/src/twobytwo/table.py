"""Validated 2x2 joint tables, marginals, sign policies and symmetry transforms.

Cells are named after the atoms they hold::

            B     not B
    A       p       q
    not A   r       s

A table is *exact* when all four cells are :class:`fractions.Fraction`
values and *float* otherwise. The two representations share one type.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Literal, Union

from .errors import DegenerateMarginal, EmptySpace, NegativeCell, SumOutOfTolerance

Scalar = Union[Fraction, float]

#: accepted distance of a float input sum from 1 before renormalization
INPUT_SUM_TOL = 1e-9
#: residual allowed on a stored float table after renormalization
STORED_SUM_TOL = 1e-12
DEFAULT_ZERO_BAND = 1e-12


def as_exact(x) -> Fraction:
    """Convert ``x`` to a Fraction, reading floats by their decimal repr.

    ``as_exact(0.1) == Fraction(1, 10)``; a binary-exact reading would
    give 3602879701896397/36028797018963968, which is never what a user
    typing 0.1 means.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"cannot make {x!r} exact")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def of(cls, x) -> "Sign":
        return cls((x > 0) - (x < 0))


@dataclass(frozen=True)
class SignPolicy:
    """How signs are decided: exact comparison, or float with a zero band."""

    mode: Literal["exact", "float"] = "float"
    zero_band: float = DEFAULT_ZERO_BAND

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown sign mode {self.mode!r}")
        if not self.zero_band >= 0:
            raise ValueError("zero_band must be nonnegative")

    @classmethod
    def exact(cls) -> "SignPolicy":
        return cls("exact", 0.0)

    @classmethod
    def floating(cls, zero_band: float = DEFAULT_ZERO_BAND) -> "SignPolicy":
        return cls("float", zero_band)

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"


EXACT = SignPolicy.exact()
FLOAT = SignPolicy.floating()


@dataclass(frozen=True)
class MarginalPair:
    alpha: Scalar
    beta: Scalar

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise DegenerateMarginal(f"{name}={v} is not strictly inside (0, 1)")

    @property
    def exact(self) -> bool:
        return is_exact(self.alpha) and is_exact(self.beta)


@dataclass(frozen=True)
class CountTable:
    """Cell cardinalities of a finite uniform space."""

    n_p: int
    n_q: int
    n_r: int
    n_s: int

    def __post_init__(self):
        for v in self.counts:
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"counts must be integers, got {v!r}")
            if v < 0:
                raise NegativeCell(f"negative count {v}")

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.n_p, self.n_q, self.n_r, self.n_s)

    @property
    def total(self) -> int:
        return self.n_p + self.n_q + self.n_r + self.n_s


@dataclass(frozen=True)
class ProbTable:
    p: Scalar
    q: Scalar
    r: Scalar
    s: Scalar

    def __post_init__(self):
        cells = (self.p, self.q, self.r, self.s)
        exact = all(is_exact(c) for c in cells)
        if exact:
            cells = tuple(Fraction(c) for c in cells)
        else:
            cells = tuple(float(c) for c in cells)
        for name, c in zip("pqrs", cells):
            object.__setattr__(self, name, c)
        if any(c < 0 for c in cells):
            raise NegativeCell(f"negative cell in {cells}")
        total = sum(cells)
        if exact and total != 1:
            raise SumOutOfTolerance(f"cells sum to {total}, not 1")
        if not exact and abs(total - 1.0) > STORED_SUM_TOL:
            raise SumOutOfTolerance(f"cells sum to {total!r}, not 1")
        a = cells[0] + cells[1]
        b = cells[0] + cells[2]
        if a <= 0 or a >= 1 or b <= 0 or b >= 1:
            raise DegenerateMarginal(f"P(A)={a}, P(B)={b} must lie strictly in (0, 1)")

    @property
    def cells(self) -> tuple:
        return (self.p, self.q, self.r, self.s)

    @property
    def exact(self) -> bool:
        return isinstance(self.p, Fraction)

    @property
    def strictly_positive(self) -> bool:
        return all(c > 0 for c in self.cells)

    @property
    def alpha(self) -> Scalar:
        return self.p + self.q

    @property
    def beta(self) -> Scalar:
        return self.p + self.r

    def to_float(self) -> "ProbTable":
        if not self.exact:
            return self
        return from_probs(*(float(c) for c in self.cells), policy=FLOAT)

    def to_exact(self) -> "ProbTable":
        if self.exact:
            return self
        return from_probs(*self.cells, policy=EXACT)

    def __str__(self):
        return "ProbTable(p={}, q={}, r={}, s={})".format(*self.cells)


def from_probs(p, q, r, s, policy: SignPolicy = FLOAT) -> ProbTable:
    """Build a table from four cell probabilities.

    Float mode accepts sums within 1e-9 of 1 and renormalizes. Exact mode
    converts every input to a Fraction and requires the sum to be exactly 1.
    """
    if policy.is_exact:
        cells = [as_exact(x) for x in (p, q, r, s)]
        if any(c < 0 for c in cells):
            raise NegativeCell(f"negative cell in {cells}")
        total = sum(cells)
        if total != 1:
            raise SumOutOfTolerance(f"cells sum to {total}, exact mode needs 1")
        return ProbTable(*cells)
    cells = [float(x) for x in (p, q, r, s)]
    if any(not math.isfinite(c) for c in cells):
        raise ValueError(f"non-finite cell in {cells}")
    if any(c < 0 for c in cells):
        raise NegativeCell(f"negative cell in {cells}")
    total = math.fsum(cells)
    if abs(total - 1.0) > INPUT_SUM_TOL:
        raise SumOutOfTolerance(f"cells sum to {total!r}, outside 1 +/- {INPUT_SUM_TOL}")
    if total != 1.0:
        cells = [c / total for c in cells]
    return ProbTable(*cells)


def from_counts(c: CountTable) -> ProbTable:
    """Exact table of a finite uniform space: each cell is count / N."""
    n = c.total
    if n == 0:
        raise EmptySpace("all four counts are zero")
    return ProbTable(*(Fraction(k, n) for k in c.counts))


def to_counts(t: ProbTable) -> CountTable:
    """Smallest CountTable whose uniform law is ``t`` (exact tables only)."""
    from .errors import NotExact

    if not t.exact:
        raise NotExact("counts need an exact table")
    n = math.lcm(*(c.denominator for c in t.cells))
    return CountTable(*(int(c * n) for c in t.cells))


def marginals(t: ProbTable) -> MarginalPair:
    return MarginalPair(t.alpha, t.beta)


def transpose(t: ProbTable) -> ProbTable:
    """Swap the roles of A and B."""
    return ProbTable(t.p, t.r, t.q, t.s)


def complement(t: ProbTable, axis: Literal["A", "B"]) -> ProbTable:
    """Replace A by not-A (axis "A") or B by not-B (axis "B"); negates delta."""
    if axis == "A":
        return ProbTable(t.r, t.s, t.p, t.q)
    if axis == "B":
        return ProbTable(t.q, t.p, t.s, t.r)
    raise ValueError(f"axis must be 'A' or 'B', got {axis!r}")
