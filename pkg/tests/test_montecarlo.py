import math

import numpy as np
import pytest

from twobytwo import montecarlo as mc
from twobytwo.measures import delta
from twobytwo.table import from_probs


def test_sample_pairs_deterministic(tu):
    a = mc.sample_pairs(tu, 4, 0)
    b = mc.sample_pairs(tu, 4, 0)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    assert a[0].shape == (4,)


def test_sample_pairs_rejects_empty(t1):
    with pytest.raises(ValueError):
        mc.sample_pairs(t1, 0, 1)


def test_cell_frequencies(t1):
    n = 10**6
    cells = mc.sample_cells(t1, n, 5)
    freq = np.bincount(cells, minlength=4) / n
    for f, c in zip(freq, t1.cells):
        assert abs(f - c) <= 4 * math.sqrt(c * (1 - c) / n)


def test_pairs_do_not_depend_on_sharding(t1, monkeypatch):
    x = mc.sample_cells(t1, 1000, 9)
    tl = mc.tally(t1, 1000, 9)
    assert tl.counts == tuple(np.bincount(x, minlength=4))
    a, b = x[0::2], x[1::2]
    conc = int(np.sum(((a == 0) & (b == 3)) | ((a == 3) & (b == 0))))
    disc = int(np.sum(((a == 1) & (b == 2)) | ((a == 2) & (b == 1))))
    assert (tl.concordant, tl.discordant) == (conc, disc)


def test_multi_shard_merge(t1):
    n = 2 * mc.SHARD_SIZE + 17
    serial = mc.tally(t1, n, 3)
    threaded = mc.tally(t1, n, 3, workers=3)
    assert serial == threaded
    assert sum(serial.counts) == n


@pytest.mark.parametrize("probs", [(0.4, 0.1, 0.2, 0.3), (0.25,) * 4, (0.3, 0.2, 0.3, 0.2)])
def test_covariance_estimate(probs):
    t = from_probs(*probs)
    est = mc.estimate_covariance(t, 10**6, 42)
    assert est.within(delta(t))
    assert est.std_error > 0


def test_concordance_estimate(t1, tu):
    conc, disc = mc.estimate_concordance(t1, 2 * 10**6, 7)
    assert conc.within(0.24) and disc.within(0.04)
    again = mc.estimate_concordance(t1, 2 * 10**6, 7)
    assert (conc, disc) == again
    c2, d2 = mc.estimate_concordance(tu, 2 * 10**6, 7)
    assert c2.within(0.125) and d2.within(0.125)


def test_mismatch_estimate(t1):
    assert mc.estimate_mismatch(t1, 10**6, 1).within(0.3)


def test_small_n_rejected(t1):
    for fn in (mc.estimate_covariance, mc.estimate_concordance, mc.estimate_mismatch):
        with pytest.raises(ValueError):
            fn(t1, 1, 0)


def test_cross_check_exact_input(t1_exact):
    rows = mc.cross_check(t1_exact, 10**5, 4)
    assert [r.name for r in rows] == ["covariance", "concordance", "discordance", "mismatch"]
    assert all(r.passed for r in rows)
