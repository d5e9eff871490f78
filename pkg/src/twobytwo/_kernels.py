"""Hot loops: Monte Carlo tallies, brute-force pair enumeration, batched signs.

Each kernel has a numba implementation and a pure-numpy one with the same
signature and bit-identical integer results. The numba path is used when
numba imports and ``TWOBYTWO_DISABLE_NUMBA`` is unset (or "0"); the
public names at the bottom of the module are bound once at import.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_flag = os.environ.get("TWOBYTWO_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = numba is not None and _flag in ("", "0", "false", "no")
BACKEND = "numba" if USE_NUMBA else "numpy"

#: columns of :func:`batch_signs`, each oriented to agree with sign(delta)
SIGN_COLUMNS = (
    "delta", "cond_diff_a", "cond_diff_b", "theta", "phi", "odds_ratio",
    "log_odds_ratio", "bayes_factor", "concordance_excess", "mismatch_excess",
    "pmi_11", "pmi_00", "neg_pmi_10", "neg_pmi_01",
)

_PAIR_CHUNK = 2048


# --------------------------------------------------------------------------
# numpy implementations


def draw_cells_numpy(u, cum):
    """Inverse-CDF cell index (0..3 for p, q, r, s) of each uniform in ``u``."""
    return np.searchsorted(cum, u, side="right").astype(np.int8)


def tally_numpy(cells):
    """(cell counts, concordant pairs, discordant pairs) over consecutive pairs."""
    counts = np.bincount(cells, minlength=4).astype(np.int64)
    m = cells.shape[0] // 2
    a = cells[0:2 * m:2].astype(np.int64)
    b = cells[1:2 * m:2].astype(np.int64)
    opposite = (a + b) == 3
    conc = int(np.count_nonzero(opposite & (a * b == 0)))
    disc = int(np.count_nonzero(opposite & (a * b == 2)))
    return counts, conc, disc


def enumerate_pairs_numpy(first_in, second_in):
    """Count ordered pairs (u, v) over first x second by explicit enumeration.

    favorable: u has the target property and v lacks it;
    unfavorable: u lacks it and v has it.
    """
    fav = 0
    unf = 0
    notv = ~second_in
    for start in range(0, first_in.shape[0], _PAIR_CHUNK):
        u = first_in[start:start + _PAIR_CHUNK, None]
        fav += int(np.count_nonzero(u & notv[None, :]))
        unf += int(np.count_nonzero(~u & second_in[None, :]))
    return fav, unf


def _sgn_band_numpy(x, band):
    out = np.sign(x).astype(np.int8)
    out[np.abs(x) <= band] = 0
    return out


def batch_signs_numpy(cells, band):
    p, q, r, s = cells[:, 0], cells[:, 1], cells[:, 2], cells[:, 3]
    a = p + q
    b = p + r
    d = p * s - q * r
    va = a * (1 - a)
    vb = b * (1 - b)
    cols = (
        d,
        p / (p + r) - q / (q + s),
        p / (p + q) - r / (r + s),
        (p - a * b) / (va * vb),
        d / np.sqrt(va * vb),
        (p * s) / (q * r) - 1,
        (np.log(p) + np.log(s)) - (np.log(q) + np.log(r)),
        (p / (p + q)) / (r / (r + s)) - 1,
        2 * p * s - 2 * q * r,
        (a * (1 - b) + (1 - a) * b) - (q + r),
        np.log(p / (a * b)),
        np.log(s / ((1 - a) * (1 - b))),
        -np.log(q / (a * (1 - b))),
        -np.log(r / ((1 - a) * b)),
    )
    return np.stack([_sgn_band_numpy(c, band) for c in cols], axis=1)


# --------------------------------------------------------------------------
# numba implementations

if numba is not None:

    @numba.njit(cache=True)
    def draw_cells_numba(u, cum):
        out = np.empty(u.shape[0], np.int8)
        c0, c1, c2 = cum[0], cum[1], cum[2]
        for i in range(u.shape[0]):
            x = u[i]
            if x < c0:
                out[i] = 0
            elif x < c1:
                out[i] = 1
            elif x < c2:
                out[i] = 2
            else:
                out[i] = 3
        return out

    @numba.njit(cache=True)
    def _tally_numba(cells):
        counts = np.zeros(4, np.int64)
        for i in range(cells.shape[0]):
            counts[cells[i]] += 1
        conc = 0
        disc = 0
        for k in range(cells.shape[0] // 2):
            a = cells[2 * k]
            b = cells[2 * k + 1]
            if a + b == 3:
                if a == 0 or b == 0:
                    conc += 1
                else:
                    disc += 1
        return counts, conc, disc

    def tally_numba(cells):
        counts, conc, disc = _tally_numba(cells)
        return counts, int(conc), int(disc)

    @numba.njit(cache=True)
    def _enumerate_pairs_numba(first_in, second_in):
        fav = 0
        unf = 0
        for i in range(first_in.shape[0]):
            u = first_in[i]
            for j in range(second_in.shape[0]):
                v = second_in[j]
                fav += u and not v
                unf += v and not u
        return fav, unf

    def enumerate_pairs_numba(first_in, second_in):
        fav, unf = _enumerate_pairs_numba(first_in, second_in)
        return int(fav), int(unf)

    @numba.njit(cache=True)
    def _sgn_band(x, band):
        if abs(x) <= band:
            return 0
        return 1 if x > 0 else -1

    @numba.njit(cache=True)
    def batch_signs_numba(cells, band):
        n = cells.shape[0]
        out = np.empty((n, 14), np.int8)
        for i in range(n):
            p, q, r, s = cells[i, 0], cells[i, 1], cells[i, 2], cells[i, 3]
            a = p + q
            b = p + r
            d = p * s - q * r
            va = a * (1 - a)
            vb = b * (1 - b)
            out[i, 0] = _sgn_band(d, band)
            out[i, 1] = _sgn_band(p / (p + r) - q / (q + s), band)
            out[i, 2] = _sgn_band(p / (p + q) - r / (r + s), band)
            out[i, 3] = _sgn_band((p - a * b) / (va * vb), band)
            out[i, 4] = _sgn_band(d / np.sqrt(va * vb), band)
            out[i, 5] = _sgn_band((p * s) / (q * r) - 1, band)
            out[i, 6] = _sgn_band((np.log(p) + np.log(s)) - (np.log(q) + np.log(r)), band)
            out[i, 7] = _sgn_band((p / (p + q)) / (r / (r + s)) - 1, band)
            out[i, 8] = _sgn_band(2 * p * s - 2 * q * r, band)
            out[i, 9] = _sgn_band((a * (1 - b) + (1 - a) * b) - (q + r), band)
            out[i, 10] = _sgn_band(np.log(p / (a * b)), band)
            out[i, 11] = _sgn_band(np.log(s / ((1 - a) * (1 - b))), band)
            out[i, 12] = _sgn_band(-np.log(q / (a * (1 - b))), band)
            out[i, 13] = _sgn_band(-np.log(r / ((1 - a) * b)), band)
        return out


if USE_NUMBA:
    draw_cells = draw_cells_numba
    tally = tally_numba
    enumerate_pairs = enumerate_pairs_numba
    batch_signs = batch_signs_numba
else:
    draw_cells = draw_cells_numpy
    tally = tally_numpy
    enumerate_pairs = enumerate_pairs_numpy
    batch_signs = batch_signs_numpy
