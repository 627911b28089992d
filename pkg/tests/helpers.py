"""Shared fixtures data, random channel generators and an mpmath oracle."""

import numpy as np
from mpmath import mp, mpf, log

from pgic import ChannelInstance

E1 = ChannelInstance.from_rows([(1, 2, 2, 1, 1, 1)])
E2 = ChannelInstance.from_rows([(1, 3, 1.1, 1, 1, 1), (1, 1.1, 3, 1, 1, 1)])
E3 = ChannelInstance.from_rows([(1, 2, 0.5, 1, 1, 1)])
E4 = ChannelInstance.from_rows([(1, 0.4, 0.4, 1, 1, 1)])
E5 = ChannelInstance.from_rows([(1, 1.1, 0.5, 1, 1, 1), (1, 2, 0.5, 1, 1, 1)])


def _logu(rng, lo, hi, size):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size))


def _signs(rng, size):
    return rng.choice([-1.0, 1.0], size)


def random_strong(rng, M=None, power=(0.1, 10.0)):
    M = int(rng.integers(1, 4)) if M is None else M
    h11 = _logu(rng, 0.5, 2.0, M) * _signs(rng, M)
    h22 = _logu(rng, 0.5, 2.0, M) * _signs(rng, M)
    h12 = np.abs(h11) * _logu(rng, 1.0, 4.0, M) * _signs(rng, M)
    h21 = np.abs(h22) * _logu(rng, 1.0, 4.0, M) * _signs(rng, M)
    return ChannelInstance.from_arrays(h11, h12, h21, h22,
                                       _logu(rng, *power, M), _logu(rng, *power, M))


def random_mixed(rng, M=None, power=(0.1, 10.0), orientation='A'):
    """MixedA channel (|h12| >= |h11|, |h21| <= |h22|); 'B' relabels users."""
    M = int(rng.integers(1, 4)) if M is None else M
    h11 = _logu(rng, 0.5, 2.0, M) * _signs(rng, M)
    h22 = _logu(rng, 0.5, 2.0, M) * _signs(rng, M)
    h12 = np.abs(h11) * _logu(rng, 1.0, 4.0, M) * _signs(rng, M)
    h21 = np.abs(h22) * _logu(rng, 0.25, 1.0, M) * _signs(rng, M)
    ch = ChannelInstance.from_arrays(h11, h12, h21, h22,
                                     _logu(rng, *power, M), _logu(rng, *power, M))
    return ch if orientation == 'A' else ch.swapped()


def random_weak(rng, M=None, power=(0.1, 10.0)):
    M = int(rng.integers(1, 4)) if M is None else M
    h11 = _logu(rng, 0.5, 2.0, M) * _signs(rng, M)
    h22 = _logu(rng, 0.5, 2.0, M) * _signs(rng, M)
    h12 = np.abs(h11) * _logu(rng, 0.05, 1.0, M) * _signs(rng, M)
    h21 = np.abs(h22) * _logu(rng, 0.05, 1.0, M) * _signs(rng, M)
    return ChannelInstance.from_arrays(h11, h12, h21, h22,
                                       _logu(rng, *power, M), _logu(rng, *power, M))


def random_any(rng, M=None):
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return random_strong(rng, M)
    if kind == 1:
        return random_mixed(rng, M)
    if kind == 2:
        return random_mixed(rng, M, orientation='B')
    return random_weak(rng, M)


def random_correlation(rng, M):
    """Random correlation matrix (unit diagonal, PSD)."""
    A = rng.standard_normal((M, M + int(rng.integers(0, 3))))
    S = A @ A.T
    d = np.sqrt(np.diag(S))
    C = S / np.outer(d, d)
    np.fill_diagonal(C, 1.0)
    return C


def random_covariance(rng, p):
    """Random PSD matrix with diagonal exactly ``p``."""
    C = random_correlation(rng, len(p))
    s = np.sqrt(p)
    S = C * np.outer(s, s)
    np.fill_diagonal(S, p)
    return S


# -- high-precision oracle ------------------------------------------------------

def oracle_rates(ch, dps=40):
    """Rate quantities of every sub-channel, evaluated with mpmath."""
    mp.dps = dps
    out = []
    for s in ch:
        h11, h12, h21, h22, p1, p2 = (mpf(repr(v)) for v in
                                      (s.h11, s.h12, s.h21, s.h22, s.p1, s.p2))

        def L(x):
            return log(1 + x, 2) / 2

        out.append({
            'a': L(h11 ** 2 * p1), 'b': L(h12 ** 2 * p1), 'c': L(h21 ** 2 * p2),
            'd': L(h22 ** 2 * p2), 'e': L(h11 ** 2 * p1 + h21 ** 2 * p2),
            'f': L(h12 ** 2 * p1 + h22 ** 2 * p2),
            'g': L(h11 ** 2 * p1 / (1 + h21 ** 2 * p2)),
            'h': L(h22 ** 2 * p2 / (1 + h12 ** 2 * p1)),
            'i': L(h21 ** 2 * p2 + h11 ** 2 * p1 / (1 + h12 ** 2 * p1)),
            'j': L(h12 ** 2 * p1 + h22 ** 2 * p2 / (1 + h21 ** 2 * p2)),
        })
    return out


def oracle_strong(ch):
    q = oracle_rates(ch)
    joint = min(sum(x['a'] + x['d'] for x in q), sum(x['e'] for x in q), sum(x['f'] for x in q))
    indep = sum(min(x['a'] + x['d'], x['e'], x['f']) for x in q)
    return float(joint), float(indep)


def oracle_mixed(ch):
    q = oracle_rates(ch)
    joint = min(sum(x['f'] for x in q), sum(x['d'] + x['g'] for x in q))
    indep = sum(min(x['f'], x['d'] + x['g']) for x in q)
    return float(joint), float(indep)
