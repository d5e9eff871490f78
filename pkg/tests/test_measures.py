"""Per-measure examples.

Log-valued expectations were frozen from 40-digit mpmath evaluations of
the defining formulas; rational ones are exact Fractions worked by hand.
"""

import math
from fractions import Fraction as F

import numpy as np
import pytest

from twobytwo import measures as M
from twobytwo.errors import Indeterminate, ZeroCell
from twobytwo.table import EXACT, FLOAT, Sign, SignPolicy, from_probs, transpose

LN6 = 1.791759469228055000812477358380702272723
GAMMA_T1 = 0.4479398673070137502031193395951755681808
H_A_T1 = -0.101366277027041095494503278866087284143
H_B_T1 = 0.2452073132529315592141127818630009998948
PHI_T1 = 0.408248290463863016366214012450981898661
PMI11_T1 = 0.2876820724517809274392190059938274315035
PMI10_T1 = -0.6931471805599453094172321214581765680755
MI_T1 = 0.08630462173553427823176570179814822945105

ZERO_CELL = (0.5, 0.2, 0, 0.3)


def test_delta(t1_exact, tu_exact, tneg_exact):
    assert M.delta(t1_exact) == F(1, 10)
    assert M.delta(tu_exact) == 0
    assert M.delta(tneg_exact) == F(-1, 10)


def test_conditional_diffs(t1_exact, tu):
    assert M.conditional_diffs(t1_exact) == (F(1, 10) / F(24, 100), F(1, 10) / F(25, 100))
    assert M.conditional_diffs(tu) == (0, 0)
    assert M.conditional_diffs(from_probs("0.3", "0.2", "0.3", "0.2", policy=EXACT)) == (0, 0)


def test_coupling_t(t1_exact, tu, indep_exact):
    assert M.coupling_t(t1_exact) == F(1, 10) == M.delta(t1_exact)
    assert M.coupling_t(tu) == 0
    assert M.coupling_t(indep_exact) == 0


def test_theta(t1_exact, tu):
    th = M.theta(t1_exact)
    assert th == F(5, 3)
    assert th * F(1, 4) == M.conditional_diffs(t1_exact)[0]
    assert th * F(6, 25) == M.conditional_diffs(t1_exact)[1]
    assert M.theta(tu) == 0


def test_phi(t1, tu):
    assert M.phi(t1) == pytest.approx(PHI_T1, abs=1e-15)
    assert M.phi(tu) == 0
    aligned = from_probs(F(1, 2), 0, 0, F(1, 2), policy=EXACT)
    assert M.phi(aligned) == 1 and isinstance(M.phi(aligned), F)


def test_phi_theta_relation(t1):
    va = t1.alpha * (1 - t1.alpha)
    vb = t1.beta * (1 - t1.beta)
    assert M.phi(t1) == pytest.approx(M.theta(t1) * math.sqrt(va * vb), abs=1e-15)


def test_odds_ratio(t1_exact, tu):
    assert M.odds_ratio(t1_exact) == 6
    assert M.odds_ratio(tu) == 1
    assert M.odds_ratio(from_probs(*ZERO_CELL)) == math.inf


def test_log_odds_ratio(t1, tu):
    assert M.log_odds_ratio(t1) == pytest.approx(LN6, abs=1e-14)
    assert M.log_odds_ratio(tu) == 0
    assert M.log_odds_ratio(transpose(t1)) == pytest.approx(LN6, abs=1e-14)
    assert abs(M.log_odds_ratio(t1) - math.log(M.odds_ratio(t1))) <= 1e-12


def test_indeterminate_ratio():
    with pytest.raises(Indeterminate):
        M._ratio(0, 0)
    with pytest.raises(Indeterminate):
        M._ratio(math.inf, math.inf)


def test_ising_params(t1, tu):
    ip = M.ising_params(t1)
    assert ip.gamma == pytest.approx(GAMMA_T1, abs=1e-14)
    assert ip.h_A == pytest.approx(H_A_T1, abs=1e-14)
    assert ip.h_B == pytest.approx(H_B_T1, abs=1e-14)
    # independent oracle: solve log P = -log Z + h_A u + h_B v + gamma u v
    design = np.array([[1, u, v, u * v] for u, v in M.SPIN_POINTS], float)
    sol = np.linalg.solve(design, np.log(t1.cells))
    assert np.allclose(sol, [-ip.log_Z, ip.h_A, ip.h_B, ip.gamma], atol=1e-12)
    assert max(abs(a - b) for a, b in zip(ip.cells(), t1.cells)) < 1e-10

    iu = M.ising_params(tu)
    assert (iu.h_A, iu.h_B, iu.gamma) == (0, 0, 0)
    assert iu.log_Z == pytest.approx(math.log(4), abs=1e-15)


def test_ising_needs_positive_cells():
    with pytest.raises(ZeroCell):
        M.ising_params(from_probs(*ZERO_CELL))


def test_walsh(t1_exact, tu_exact, indep_exact):
    w = M.walsh_coefficients(t1_exact)
    assert w.c_UV == F(1, 10)
    direct, form1, form2 = M.spin_correlation_forms(t1_exact)
    assert direct == form1 == form2 == F(2, 5)
    assert w.cells() == t1_exact.cells
    assert M.walsh_coefficients(tu_exact) == M.WalshCoefficients(F(1, 4), 0, 0, 0)
    wi = M.walsh_coefficients(indep_exact)
    assert wi.c_UV == 0 == F(1, 4) * 0 * F(1, 5)
    assert w.c_empty == F(1, 4)
    assert w.c_U == F(1, 4) * (2 * t1_exact.alpha - 1)


def test_pmi(t1, tu):
    assert M.pmi(t1, 1, 1) == pytest.approx(PMI11_T1, abs=1e-15)
    assert M.pmi(t1, 1, 0) == pytest.approx(PMI10_T1, abs=1e-15)
    for a in (0, 1):
        for b in (0, 1):
            assert M.pmi(tu, a, b) == 0
    assert M.pmi(from_probs(*ZERO_CELL), 0, 1) == -math.inf
    with pytest.raises(ValueError):
        M.pmi(t1, 2, 0)


def test_mutual_information(t1, tu, indep_exact):
    assert M.mutual_information(t1) == pytest.approx(MI_T1, abs=1e-15)
    assert M.mutual_information(tu) == 0
    assert M.mutual_information(indep_exact) == 0
    # zero cell contributes nothing
    assert M.mutual_information(from_probs(*ZERO_CELL)) > 0


def test_regression_slopes(t1_exact, tu):
    assert M.regression_slopes(t1_exact) == (F(5, 12), F(2, 5))
    assert M.regression_slopes(t1_exact) == M.conditional_diffs(t1_exact)
    assert M.regression_slopes(tu) == (0, 0)


def test_concordance(t1_exact, tu_exact):
    conc, disc = M.concordance(t1_exact)
    assert (conc, disc) == (F(6, 25), F(1, 25))
    assert conc - disc == 2 * M.delta(t1_exact)
    assert M.concordance(tu_exact) == (F(1, 8), F(1, 8))


def test_mismatch_excess(t1_exact, tu_exact, tneg_exact):
    assert M.mismatch_excess(t1_exact) == F(1, 5) == 2 * M.coupling_t(t1_exact)
    assert M.mismatch_excess(tu_exact) == 0
    assert M.mismatch_excess(tneg_exact) == F(-1, 5)


def test_bayes_factor(t1_exact, tu):
    assert M.bayes_factor(t1_exact) == 2
    assert M.bayes_factor(tu) == 1
    assert M.bayes_factor(from_probs(*ZERO_CELL)) == math.inf


def test_likelihood_ratios(t1_exact, tu):
    l0, l1 = M.likelihood_ratios(t1_exact)
    assert (l0, l1) == (F(1, 3), 2)
    assert l1 / l0 == M.odds_ratio(t1_exact)
    assert l1 > l0
    assert M.likelihood_ratios(tu) == (1, 1)


def test_logistic_slope(t1, tu):
    assert M.logistic_slope(t1) == pytest.approx(LN6, abs=1e-14)
    assert M.logistic_slope(tu) == 0
    assert M.logistic_slope(transpose(t1)) == pytest.approx(LN6, abs=1e-14)
    with pytest.raises(ZeroCell):
        M.logistic_slope(from_probs(*ZERO_CELL))


def test_loglinear_matches_gamma(t1):
    assert M.loglinear_interaction(t1) == pytest.approx(M.ising_params(t1).gamma, abs=1e-14)


def test_tp2(t1, tu, tneg_exact):
    assert M.tp2(t1) is True
    assert M.tp2(tu) is True
    assert M.tp2(tneg_exact) is False


def test_stochastic_dominance(t1, tu, tneg_exact):
    assert M.stochastic_dominance(t1) == (Sign.POSITIVE, Sign.POSITIVE)
    assert M.stochastic_dominance(tu) == (Sign.ZERO, Sign.ZERO)
    assert M.stochastic_dominance(tneg_exact) == (Sign.NEGATIVE, Sign.NEGATIVE)


def test_rank(t1_exact, tu, indep_exact):
    assert M.rank_of_M(tu) == 1
    assert M.rank_of_M(t1_exact) == 2
    assert M.rank_of_M(indep_exact) == 1


def test_classify():
    assert M.classify(F(1, 10), EXACT, 0) is Sign.POSITIVE
    assert M.classify(6.0, SignPolicy.floating(1e-12), 1) is Sign.POSITIVE
    assert M.classify(1 + 1e-15, SignPolicy.floating(1e-12), "one") is Sign.ZERO
    assert M.classify(-math.inf, FLOAT) is Sign.NEGATIVE
    with pytest.raises(Indeterminate):
        M.classify(float("nan"), FLOAT)


def test_full_report_signs(t1, tu, tneg_exact):
    r = M.full_report(t1)
    assert r.verdict == "consistent"
    assert r.delta_sign is Sign.POSITIVE
    for name, e in r.entries.items():
        if e.orientation:
            assert e.sign == e.orientation * Sign.POSITIVE, name

    r = M.full_report(tu)
    assert r.consistent
    assert all(e.sign is Sign.ZERO for e in r.entries.values())

    r = M.full_report(tneg_exact)
    assert r.consistent and r.delta_sign is Sign.NEGATIVE
    assert r.entries["odds_ratio"].value == F(1, 6)


def test_full_report_partial_on_zero_cell():
    r = M.full_report(from_probs(*ZERO_CELL))
    assert r.consistent
    assert {"ising_gamma", "logistic_slope", "loglinear_interaction"} <= set(r.omitted)
    assert r.entries["odds_ratio"].value == math.inf


def test_full_report_exact_needs_exact_table(t1):
    from twobytwo.errors import NotExact

    with pytest.raises(NotExact):
        M.full_report(t1, EXACT)


def test_full_report_flags_dissent(t1, monkeypatch):
    # a broken measure must show up as dissent rather than be absorbed
    broken = M._Measure("broken", "test", lambda t: -1.0)
    monkeypatch.setattr(M, "SIGNED_MEASURES", M.SIGNED_MEASURES + (broken,))
    r = M.full_report(t1)
    assert r.verdict == "inconsistent"
    assert r.dissenting == ["broken"]
