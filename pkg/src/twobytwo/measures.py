"""Association measures on a 2x2 table and the sign-consistency report.

Every function takes a :class:`~twobytwo.table.ProbTable`. Exact tables
give Fraction results wherever the measure is rational; logarithmic
measures are always floats. Ratio and log measures return ``math.inf`` or
``-math.inf`` at zero cells when the limit has a definite sign and raise
:class:`~twobytwo.errors.Indeterminate` on 0/0. Logs are natural (nats).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import Indeterminate, NotExact, ZeroCell
from .table import EXACT, FLOAT, ProbTable, Scalar, Sign, SignPolicy, to_counts

INF = math.inf


def _log(x) -> float:
    # log(num) - log(den) keeps full precision for Fractions with huge terms
    if isinstance(x, Fraction):
        if x <= 0:
            if x == 0:
                return -INF
            raise ValueError("log of a negative number")
        return math.log(x.numerator) - math.log(x.denominator)
    if x == 0:
        return -INF
    return math.log(x)


def _isinf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def _ratio(num, den):
    """num / den over the extended reals; both arguments are >= 0 or +inf."""
    if _isinf(num) and _isinf(den):
        raise Indeterminate("inf / inf")
    if den == 0:
        if num == 0:
            raise Indeterminate("0 / 0")
        return INF
    if _isinf(num):
        return INF
    if _isinf(den):
        return Fraction(0) if isinstance(num, Fraction) else 0.0
    return num / den


def _require_positive(t: ProbTable, what: str):
    if not t.strictly_positive:
        raise ZeroCell(f"{what} needs every cell > 0, got {t}")


def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def default_policy(t: ProbTable) -> SignPolicy:
    return EXACT if t.exact else FLOAT


# --------------------------------------------------------------------------
# differences and covariance-type measures


def delta(t: ProbTable) -> Scalar:
    """ps - qr, the determinant of the cell matrix."""
    return t.p * t.s - t.q * t.r


def conditional_probabilities(t: ProbTable):
    """(P(A|B), P(A|not B), P(B|A), P(B|not A)) from their definitions."""
    p, q, r, s = t.cells
    return p / (p + r), q / (q + s), p / (p + q), r / (r + s)


def conditional_diffs(t: ProbTable):
    """(P(A|B) - P(A|not B), P(B|A) - P(B|not A))."""
    a_b, a_nb, b_a, b_na = conditional_probabilities(t)
    return a_b - a_nb, b_a - b_na


def coupling_t(t: ProbTable) -> Scalar:
    """Excess of P(A and B) over its independence value P(A)P(B)."""
    return t.p - t.alpha * t.beta


def _marginal_variances(t: ProbTable):
    a, b = t.alpha, t.beta
    return a * (1 - a), b * (1 - b)


def theta(t: ProbTable) -> Scalar:
    va, vb = _marginal_variances(t)
    return coupling_t(t) / (va * vb)


def phi(t: ProbTable) -> Scalar:
    """Pearson correlation of the indicators (the canonical correlation).

    Exact tables give a Fraction when the variance product is a rational
    square and a float otherwise.
    """
    va, vb = _marginal_variances(t)
    radicand = va * vb
    num = delta(t)
    if t.exact:
        root = _exact_sqrt(radicand)
        if root is not None:
            return num / root
        return float(num) / math.sqrt(radicand)
    return max(-1.0, min(1.0, num / math.sqrt(radicand)))


canonical_correlation = phi


def regression_slopes(t: ProbTable):
    """(slope of X on Y, slope of Y on X) for the indicator regressions."""
    cov = t.p - t.alpha * t.beta
    var_x, var_y = _marginal_variances(t)
    return cov / var_y, cov / var_x


def concordance(t: ProbTable):
    """Probabilities that two independent draws are concordant / discordant."""
    return 2 * t.p * t.s, 2 * t.q * t.r


def mismatch_excess(t: ProbTable) -> Scalar:
    """Independent-coupling mismatch P(X != Y) minus the actual one."""
    a, b = t.alpha, t.beta
    return (a * (1 - b) + (1 - a) * b) - (t.q + t.r)


# --------------------------------------------------------------------------
# odds, Bayes factor, likelihood ratios


def odds_ratio(t: ProbTable):
    return _ratio(t.p * t.s, t.q * t.r)


def log_odds_ratio(t: ProbTable):
    """Mixed discrete derivative g(1,1) + g(0,0) - g(1,0) - g(0,1), g = log P."""
    ps, qr = t.p * t.s, t.q * t.r
    if ps == 0 and qr == 0:
        raise Indeterminate("log odds ratio with ps = qr = 0")
    if qr == 0:
        return INF
    if ps == 0:
        return -INF
    g11, g10, g01, g00 = (_log(c) for c in t.cells)
    return (g11 + g00) - (g10 + g01)


mixed_discrete_derivative = log_odds_ratio


def bayes_factor(t: ProbTable):
    """P(B|A) / P(B|not A)."""
    p, q, r, s = t.cells
    return _ratio(p / (p + q), r / (r + s))


def likelihood_ratios(t: ProbTable):
    """(L0, L1) with Lv = P(Y=v | A) / P(Y=v | not A)."""
    p, q, r, s = t.cells
    l1 = _ratio(p / (p + q), r / (r + s))
    l0 = _ratio(q / (p + q), s / (r + s))
    return l0, l1


def logistic_slope(t: ProbTable) -> float:
    """Slope of the saturated logistic regression of X on Y, closed form."""
    _require_positive(t, "logistic slope")
    p, q, r, s = t.cells
    return _log(p / r) - _log(q / s)


# --------------------------------------------------------------------------
# Ising / Walsh / log-linear forms on the spin encoding u = 2x - 1


@dataclass(frozen=True)
class IsingParams:
    """Gibbs form P(u, v) = exp(h_A u + h_B v + gamma u v - log_Z)."""

    h_A: float
    h_B: float
    gamma: float
    log_Z: float

    def probability(self, u: int, v: int) -> float:
        return math.exp(self.h_A * u + self.h_B * v + self.gamma * u * v - self.log_Z)

    def cells(self) -> tuple[float, float, float, float]:
        return tuple(self.probability(u, v) for u, v in SPIN_POINTS)


#: spin points in cell order p, q, r, s
SPIN_POINTS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def ising_params(t: ProbTable) -> IsingParams:
    _require_positive(t, "Ising parameters")
    lp, lq, lr, ls = (_log(c) for c in t.cells)
    gamma = ((lp + ls) - (lq + lr)) / 4
    h_a = ((lp + lq) - (lr + ls)) / 4
    h_b = ((lp + lr) - (lq + ls)) / 4
    energies = [h_a * u + h_b * v + gamma * u * v for u, v in SPIN_POINTS]
    top = max(energies)
    log_z = top + math.log(math.fsum(math.exp(e - top) for e in energies))
    return IsingParams(h_a, h_b, gamma, log_z)


def loglinear_interaction(t: ProbTable) -> float:
    """Effect-coded interaction lambda_AB(1,1) of the saturated log-linear model.

    Double-centres the log-mass array: g11 - row mean - column mean + grand mean.
    """
    _require_positive(t, "log-linear interaction")
    g11, g10, g01, g00 = (_log(c) for c in t.cells)
    row1 = (g11 + g10) / 2
    col1 = (g11 + g01) / 2
    grand = ((g11 + g00) + (g10 + g01)) / 4
    return g11 - row1 - col1 + grand


@dataclass(frozen=True)
class WalshCoefficients:
    c_empty: Scalar
    c_U: Scalar
    c_V: Scalar
    c_UV: Scalar

    def evaluate(self, u: int, v: int) -> Scalar:
        return self.c_empty + self.c_U * u + self.c_V * v + self.c_UV * u * v

    def cells(self) -> tuple:
        return tuple(self.evaluate(u, v) for u, v in SPIN_POINTS)


def walsh_coefficients(t: ProbTable) -> WalshCoefficients:
    """Coefficients of the mass function on the basis 1, u, v, uv."""
    f = dict(zip(SPIN_POINTS, t.cells))
    coef = [sum(f[u, v] * chi(u, v) for u, v in SPIN_POINTS) / 4
            for chi in (lambda u, v: 1, lambda u, v: u, lambda u, v: v, lambda u, v: u * v)]
    return WalshCoefficients(*coef)


def spin_correlation_forms(t: ProbTable):
    """E[UV] three ways: by definition and by the two closed forms."""
    a, b = t.alpha, t.beta
    direct = sum(c * u * v for c, (u, v) in zip(t.cells, SPIN_POINTS))
    return direct, 4 * t.p - 2 * a - 2 * b + 1, (2 * a - 1) * (2 * b - 1) + 4 * delta(t)


def walsh_interaction_excess(t: ProbTable) -> Scalar:
    """c_UV minus its value under independence with the same marginals."""
    w = walsh_coefficients(t)
    return w.c_UV - (2 * t.alpha - 1) * (2 * t.beta - 1) / 4


# --------------------------------------------------------------------------
# information measures


def _cell(t: ProbTable, a: int, b: int):
    return {(1, 1): t.p, (1, 0): t.q, (0, 1): t.r, (0, 0): t.s}[a, b]


def _pmi_argument(t: ProbTable, a: int, b: int):
    ma = t.alpha if a else 1 - t.alpha
    mb = t.beta if b else 1 - t.beta
    return _cell(t, a, b) / (ma * mb)


def pmi(t: ProbTable, a: int, b: int) -> float:
    """log P(A=a, B=b) / (P(A=a) P(B=b)); -inf on an empty cell."""
    if a not in (0, 1) or b not in (0, 1):
        raise ValueError("a and b must be 0 or 1")
    return _log(_pmi_argument(t, a, b))


def mutual_information(t: ProbTable) -> float:
    """Sum of cell * pmi over the atoms, with 0 log 0 = 0; in nats."""
    def term(a, b):
        c = _cell(t, a, b)
        return 0.0 if c == 0 else float(c) * pmi(t, a, b)

    total = (term(1, 1) + term(0, 0)) + (term(1, 0) + term(0, 1))
    # true value is >= 0; rounding near independence can dip below
    return max(total, 0.0)


# --------------------------------------------------------------------------
# order-theoretic and rank


def tp2(t: ProbTable) -> bool:
    return t.p * t.s >= t.q * t.r


def classify(value, policy: SignPolicy = FLOAT, reference: int = 0) -> Sign:
    """Sign of ``value - reference``; float mode maps the zero band to ZERO."""
    if reference in ("zero", "one"):
        reference = 0 if reference == "zero" else 1
    if value is None or (isinstance(value, float) and math.isnan(value)):
        raise Indeterminate(f"cannot classify {value!r}")
    if policy.is_exact or _isinf(value):
        return Sign.of(value - reference)
    d = float(value) - reference
    if abs(d) <= policy.zero_band:
        return Sign.ZERO
    return Sign.of(d)


def stochastic_dominance(t: ProbTable, policy: Optional[SignPolicy] = None):
    """(row-wise, column-wise) first-order stochastic dominance signs.

    Row-wise compares the laws of B given A and given not-A through their
    CDFs at 0, i.e. P(not B | not A) - P(not B | A); column-wise swaps roles.
    """
    policy = policy or default_policy(t)
    p, q, r, s = t.cells
    rowwise = classify(s / (r + s) - q / (p + q), policy)
    colwise = classify(s / (q + s) - r / (p + r), policy)
    return rowwise, colwise


def rank_of_M(t: ProbTable, policy: Optional[SignPolicy] = None) -> int:
    policy = policy or default_policy(t)
    return 1 if classify(delta(t), policy) is Sign.ZERO else 2


# --------------------------------------------------------------------------
# full report


@dataclass(frozen=True)
class _Measure:
    name: str
    perspective: str
    compute: Callable[[ProbTable], object]
    reference: int = 0
    orientation: int = 1  # +1 follows sign(delta), -1 opposes it
    # exact rational whose sign vs 0 decides the sign when the value
    # itself is irrational
    witness: Optional[Callable[[ProbTable], object]] = None
    # overrides value-based classification entirely
    sign_rule: Optional[Callable[[ProbTable, object, SignPolicy], Sign]] = None


def _stoch(index):
    def compute(t):
        p, q, r, s = t.cells
        if index == 0:
            return s / (r + s) - q / (p + q)
        return s / (q + s) - r / (p + r)
    return compute


def _pair_count_excess(t: ProbTable):
    c = to_counts(t)
    return c.n_p * c.n_s - c.n_q * c.n_r


def _pmi_measure(a, b, orientation):
    return _Measure(
        f"pmi_{a}{b}", f"Information: pmi(A={a}; B={b})",
        lambda t: pmi(t, a, b), 0, orientation,
        lambda t: _pmi_argument(t, a, b) - 1)


SIGNED_MEASURES: tuple[_Measure, ...] = (
    _Measure("delta", "Linear algebra: det M = ps - qr", delta),
    _Measure("cond_diff_a", "Conditional: P(A|B) - P(A|not B)",
             lambda t: conditional_diffs(t)[0]),
    _Measure("cond_diff_b", "Conditional: P(B|A) - P(B|not A)",
             lambda t: conditional_diffs(t)[1]),
    _Measure("coupling_t", "Coupling / covariance: P(A and B) - P(A)P(B)", coupling_t),
    _Measure("theta", "Coupling: normalized interaction theta", theta),
    _Measure("phi", "Hilbert space: canonical correlation phi", phi,
             witness=delta),
    _Measure("slope_x_on_y", "Regression: slope of 1_A on 1_B",
             lambda t: regression_slopes(t)[0]),
    _Measure("slope_y_on_x", "Regression: slope of 1_B on 1_A",
             lambda t: regression_slopes(t)[1]),
    _Measure("walsh_interaction", "Walsh-Fourier: f_UV above its independence value",
             walsh_interaction_excess),
    _Measure("concordance_excess", "Concordance: P(conc) - P(disc)",
             lambda t: concordance(t)[0] - concordance(t)[1]),
    _Measure("mismatch_excess", "Transport: mismatch saved versus independence",
             mismatch_excess),
    _Measure("odds_ratio", "Statistics: odds ratio ps/qr", odds_ratio, 1),
    _Measure("log_odds_ratio", "Log-potential: mixed discrete derivative of log P",
             log_odds_ratio, witness=lambda t: odds_ratio(t) - 1),
    _Measure("bayes_factor", "Bayesian: Bayes factor P(B|A)/P(B|not A)", bayes_factor, 1),
    _Measure("ising_gamma", "Ising model: interaction gamma",
             lambda t: ising_params(t).gamma, witness=lambda t: odds_ratio(t) - 1),
    _Measure("loglinear_interaction", "Log-linear: effect-coded lambda_AB",
             loglinear_interaction, witness=lambda t: odds_ratio(t) - 1),
    _Measure("mlr_ratio", "MLR: Lambda(1)/Lambda(0)",
             lambda t: _ratio(*reversed(likelihood_ratios(t))), 1),
    _Measure("logistic_slope", "Logistic: saturated slope beta_1", logistic_slope,
             witness=lambda t: (t.p / t.r) / (t.q / t.s) - 1),
    _pmi_measure(1, 1, 1),
    _pmi_measure(0, 0, 1),
    _pmi_measure(1, 0, -1),
    _pmi_measure(0, 1, -1),
    _Measure("stochastic_rowwise", "Stochastic order: law of B given A vs not A", _stoch(0)),
    _Measure("stochastic_colwise", "Stochastic order: law of A given B vs not B", _stoch(1)),
    _Measure("tp2", "Total positivity: TP2 holds (ps >= qr)", tp2,
             sign_rule=lambda t, v, policy: classify(t.p * t.s - t.q * t.r, policy)),
    _Measure("pair_count_excess", "Combinatorial: n_p n_s - n_q n_r", _pair_count_excess),
)

UNSIGNED_MEASURES: tuple[_Measure, ...] = (
    _Measure("mutual_information", "Information: mutual information (amount only)",
             mutual_information, orientation=0,
             witness=lambda t: delta(t) ** 2),
    _Measure("rank", "Linear algebra: rank of M", rank_of_M, orientation=0,
             sign_rule=lambda t, v, policy: Sign.of(v - 1)),
)


@dataclass(frozen=True)
class MeasureEntry:
    name: str
    value: object
    sign: Sign
    perspective: str
    orientation: int

    @property
    def expected_sign_factor(self) -> int:
        return self.orientation


@dataclass
class MeasureReport:
    table: ProbTable
    policy: SignPolicy
    delta_sign: Sign
    entries: dict[str, MeasureEntry] = field(default_factory=dict)
    omitted: dict[str, str] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)
    dissenting: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.dissenting

    @property
    def verdict(self) -> str:
        return "consistent" if self.consistent else "inconsistent"

    def signs(self) -> dict[str, Sign]:
        return {k: e.sign for k, e in self.entries.items()}


def _sign_of(m: _Measure, t: ProbTable, value, policy: SignPolicy) -> Sign:
    if m.sign_rule is not None:
        return m.sign_rule(t, value, policy)
    if policy.is_exact and not isinstance(value, (Fraction, int)) and not _isinf(value):
        if m.witness is not None:
            return classify(m.witness(t), policy)
        raise NotExact(f"{m.name} has no exact sign witness")
    return classify(value, policy, m.reference)


def full_report(t: ProbTable, policy: Optional[SignPolicy] = None) -> MeasureReport:
    """Compute every measure, classify signs and check them against sign(delta).

    Measures that cannot be evaluated on ``t`` (zero cells, 0/0, float
    tables for the count-based measure) are listed in ``omitted``.
    """
    policy = policy or default_policy(t)
    if policy.is_exact and not t.exact:
        raise NotExact("exact policy needs an exact table")
    if not policy.is_exact and t.exact:
        t = t.to_float()

    d_sign = classify(delta(t), policy)
    report = MeasureReport(t, policy, d_sign)
    for m in SIGNED_MEASURES + UNSIGNED_MEASURES:
        try:
            value = m.compute(t)
            sign = _sign_of(m, t, value, policy)
        except (Indeterminate, ZeroCell, NotExact) as exc:
            report.omitted[m.name] = f"{type(exc).__name__}: {exc}"
            continue
        entry = MeasureEntry(m.name, value, sign, m.perspective, m.orientation)
        report.entries[m.name] = entry
        if m.orientation and sign != m.orientation * d_sign:
            report.dissenting.append(m.name)
        elif m.name == "tp2" and policy.is_exact and value != (d_sign >= 0):
            report.dissenting.append(m.name)

    conc, disc = concordance(t)
    report.details["concordant"] = conc
    report.details["discordant"] = disc
    report.details["marginal_a"] = t.alpha
    report.details["marginal_b"] = t.beta
    try:
        l0, l1 = likelihood_ratios(t)
        report.details["likelihood_ratio_0"] = l0
        report.details["likelihood_ratio_1"] = l1
    except Indeterminate:
        pass
    w = walsh_coefficients(t)
    report.details.update(walsh_c_empty=w.c_empty, walsh_c_U=w.c_U,
                          walsh_c_V=w.c_V, walsh_c_UV=w.c_UV)
    if t.strictly_positive:
        ip = ising_params(t)
        report.details.update(ising_h_A=ip.h_A, ising_h_B=ip.h_B, ising_log_Z=ip.log_Z)
    return report
