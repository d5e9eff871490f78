import math

from hypothesis import given, settings

from twobytwo import measures as M
from twobytwo.table import EXACT, Sign, complement, transpose

from .conftest import exact_tables, float_tables


@given(exact_tables())
def test_exact_report_consistent(t):
    r = M.full_report(t)
    assert r.consistent, r.dissenting
    assert r.delta_sign is Sign.of(M.delta(t))
    assert not r.omitted


@given(float_tables())
def test_float_report_consistent(t):
    assert M.full_report(t).consistent


@given(exact_tables())
def test_algebraic_identities(t):
    d = M.delta(t)
    a, b = t.alpha, t.beta
    assert d == t.p - a * b == M.coupling_t(t)
    assert M.conditional_diffs(t) == (d / (b * (1 - b)), d / (a * (1 - a)))
    assert M.theta(t) * a * (1 - a) * b * (1 - b) == d
    conc, disc = M.concordance(t)
    assert conc - disc == 2 * d
    assert M.mismatch_excess(t) == 2 * d
    assert M.walsh_coefficients(t).c_UV == (2 * a - 1) * (2 * b - 1) / 4 + d
    assert M.walsh_interaction_excess(t) == d
    direct, f1, f2 = M.spin_correlation_forms(t)
    assert direct == f1 == f2 == (2 * a - 1) * (2 * b - 1) + 4 * d
    l0, l1 = M.likelihood_ratios(t)
    assert l1 / l0 == M.odds_ratio(t)


@given(exact_tables())
def test_symmetry(t):
    tt = transpose(t)
    assert transpose(tt) == t
    assert M.delta(tt) == M.delta(t)
    assert M.odds_ratio(tt) == M.odds_ratio(t)
    assert M.conditional_diffs(tt) == M.conditional_diffs(t)[::-1]
    for side in ("A", "B"):
        c = complement(t, side)
        assert complement(c, side) == t
        assert M.delta(c) == -M.delta(t)
        assert M.odds_ratio(c) == 1 / M.odds_ratio(t)
        assert M.full_report(c).delta_sign == -M.full_report(t).delta_sign


@given(float_tables())
def test_float_bounds(t):
    assert -1 <= M.phi(t) <= 1
    assert M.mutual_information(t) >= 0
    assert abs(M.phi(t) - M.phi(transpose(t))) <= 1e-15


@settings(deadline=None)
@given(float_tables())
def test_ising_round_trip(t):
    cells = M.ising_params(t).cells()
    assert max(abs(a - b) for a, b in zip(cells, t.cells)) < 1e-10
    assert abs(M.ising_params(t).gamma - M.log_odds_ratio(t) / 4) <= 1e-12
    assert abs(M.loglinear_interaction(t) - M.ising_params(t).gamma) <= 1e-12


@given(exact_tables())
def test_walsh_round_trip(t):
    assert M.walsh_coefficients(t).cells() == t.cells


@given(exact_tables())
def test_mutual_information_zero_iff_independent(t):
    mi = M.mutual_information(t.to_float())
    if M.delta(t) == 0:
        assert mi <= 1e-15
    else:
        assert mi > 0
    pmis = [M.pmi(t.to_float(), a, b) for a in (1, 0) for b in (1, 0)]
    s = Sign.of(M.delta(t))
    if s is not Sign.ZERO:
        assert math.copysign(1, pmis[0]) == s and math.copysign(1, pmis[3]) == s
        assert math.copysign(1, pmis[1]) == -s and math.copysign(1, pmis[2]) == -s


@given(exact_tables())
def test_exact_policy_matches_exact_signs(t):
    assert M.full_report(t, EXACT).signs() == M.full_report(t).signs()
