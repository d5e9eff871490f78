"""The fixed-marginal coupling family.

With P(A) = alpha and P(B) = beta held fixed, every 2x2 law is determined
by the coupling parameter t = P(A and B) - alpha * beta::

    P_t = (alpha beta + t, alpha (1 - beta) - t, beta (1 - alpha) - t,
           (1 - alpha)(1 - beta) + t)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OutOfRange
from .table import MarginalPair, ProbTable, Scalar, as_exact


@dataclass(frozen=True)
class CouplingFamily:
    marginals: MarginalPair
    t_min: Scalar
    t_max: Scalar

    @property
    def alpha(self):
        return self.marginals.alpha

    @property
    def beta(self):
        return self.marginals.beta

    @property
    def exact(self) -> bool:
        return self.marginals.exact

    def _coerce(self, x):
        if self.exact:
            return as_exact(x)
        return float(x)

    def check(self, t) -> Scalar:
        t = self._coerce(t)
        if not self.t_min <= t <= self.t_max:
            raise OutOfRange(f"t={t} outside [{self.t_min}, {self.t_max}]")
        return t

    def grid(self, k: int) -> list:
        """k evenly spaced t values from t_min to t_max, endpoints included."""
        if k < 2:
            raise ValueError("grid needs at least 2 points")
        width = self.t_max - self.t_min
        if self.exact:
            return [self.t_min + width * Fraction(i, k - 1) for i in range(k)]
        pts = [self.t_min + width * i / (k - 1) for i in range(k)]
        pts[-1] = self.t_max
        return pts


def make_family(m: MarginalPair) -> CouplingFamily:
    a, b = m.alpha, m.beta
    t_min = -min(a * b, (1 - a) * (1 - b))
    t_max = min(a * (1 - b), (1 - a) * b)
    return CouplingFamily(m, t_min, t_max)


def table_from_t(f: CouplingFamily, t) -> ProbTable:
    t = f.check(t)
    a, b = f.alpha, f.beta
    return ProbTable(a * b + t, a * (1 - b) - t, b * (1 - a) - t, (1 - a) * (1 - b) + t)


def _scale(f: CouplingFamily):
    a, b = f.alpha, f.beta
    return a * (1 - a) * b * (1 - b)


def t_from_theta(f: CouplingFamily, theta) -> Scalar:
    return f._coerce(theta) * _scale(f)


def table_from_theta(f: CouplingFamily, theta) -> ProbTable:
    return table_from_t(f, t_from_theta(f, theta))


def F_of_t(f: CouplingFamily, t) -> Scalar:
    """P_t(A|B) - P_t(A|not B), linear in t with slope 1 / (beta (1 - beta))."""
    t = f.check(t)
    return t / (f.beta * (1 - f.beta))


def G_of_t(f: CouplingFamily, t) -> Scalar:
    """P_t(B|A) - P_t(B|not A), linear in t with slope 1 / (alpha (1 - alpha))."""
    t = f.check(t)
    return t / (f.alpha * (1 - f.alpha))
