import json

import numpy as np
import pytest

from pgic import (Certificate, ChannelClassError, ChannelInstance, SplitParams, inner_bound_value,
                  inseparability_certificate, optimize_inner_bound, outer_bound_independent,
                  scale_powers, sum_capacity_mixed_joint, sum_capacity_strong_joint, tin_sum_rate)
from pgic.bounds import _golden_max, inner_bound_arrays
from pgic.channel import half_log2

from helpers import E1, E2, E3, E4, random_any, random_mixed, random_strong, random_weak

# found by search_inseparable(seed=1, budget=20000, M=2), rounded and re-checked below
WEAK_INSEPARABLE = ChannelInstance.from_rows([
    (1.0, 0.2615, 0.8205, 1.0, 2.03, 6.05),
    (1.0, 0.9395, 0.5689, 1.0, 54.88, 39.48),
])


def test_outer_bound_examples():
    assert outer_bound_independent(E4) == pytest.approx(0.948453254, abs=1e-6)
    assert outer_bound_independent(E1) == pytest.approx(0.631517203, abs=1e-6)
    assert outer_bound_independent(scale_powers(E2, 0)) == 0.0


def test_outer_bound_dominates_tin():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        ch = random_any(rng)
        assert outer_bound_independent(ch) >= tin_sum_rate(ch) - 1e-12


def test_split_validation():
    with pytest.raises(ValueError):
        SplitParams(1.2, 0.0)
    with pytest.raises(ValueError):
        SplitParams((0.1, 0.2), 0.3)
    with pytest.raises(ValueError):
        SplitParams((0.1, 0.2), (0.3,))
    with pytest.raises(ValueError):
        inner_bound_value(E1, SplitParams((0.1, 0.2), (0.3, 0.4)))
    sp = SplitParams((0.1, 0.2), (0.3, 0.4))
    assert sp.mode == 'per-subchannel'
    assert SplitParams.from_dict(sp.as_dict()) == sp
    assert SplitParams.from_dict(SplitParams(0.5, 1).as_dict()) == SplitParams(0.5, 1.0)


def test_inner_bound_examples():
    c = inner_bound_value(E1, SplitParams(1, 1))
    assert (c.r1c, c.r2c, c.r1p, c.r2p) == pytest.approx((0.5, 0.5, 0.0, 0.0), abs=1e-12)
    assert c.r12c == pytest.approx(1.292481250, abs=1e-9)
    assert c.total == pytest.approx(1.0, abs=1e-12)
    assert c.z1_diag == (1.0,) and c.z2_diag == (1.0,)
    c = inner_bound_value(E1, SplitParams(0, 0))
    assert c.total == pytest.approx(0.263034406, abs=1e-9)
    assert (c.r1c, c.r2c, c.r12c) == (0.0, 0.0, 0.0)


def test_inner_bound_by_hand():
    # scalar split on a two-sub-channel channel, every term written out
    ch = ChannelInstance.from_rows([(1.0, 0.6, 0.3, 1.2, 2.0, 3.0), (0.8, 0.5, 0.7, 1.0, 1.5, 0.5)])
    b1, b2 = 0.3, 0.6
    h11, h12, h21, h22, p1, p2 = ch.arrays()
    L = half_log2
    c1, c2, q1, q2 = b1 * p1, b2 * p2, (1 - b1) * p1, (1 - b2) * p2
    z1 = 1 + h11 ** 2 * q1 + h21 ** 2 * q2
    z2 = 1 + h12 ** 2 * q1 + h22 ** 2 * q2
    r1c = min(L(h11 ** 2 * c1 / z1).sum(), L(h12 ** 2 * c1 / z2).sum())
    r2c = min(L(h21 ** 2 * c2 / z1).sum(), L(h22 ** 2 * c2 / z2).sum())
    r12c = min(L((h11 ** 2 * c1 + h21 ** 2 * c2) / z1).sum(), L((h12 ** 2 * c1 + h22 ** 2 * c2) / z2).sum())
    r1p = L(h11 ** 2 * q1 / (1 + h21 ** 2 * q2)).sum()
    r2p = L(h22 ** 2 * q2 / (1 + h12 ** 2 * q1)).sum()
    c = inner_bound_value(ch, SplitParams(b1, b2))
    assert (c.r1c, c.r2c, c.r12c, c.r1p, c.r2p) == pytest.approx((r1c, r2c, r12c, r1p, r2p), rel=1e-14)
    assert c.total == pytest.approx(min(r1c + r2c, r12c) + r1p + r2p, rel=1e-14)
    assert min(c.z1_diag) >= 1 and min(c.z2_diag) >= 1


def test_inner_bound_log_det_form():
    # factorized evaluation agrees with the dense determinant expressions
    rng = np.random.default_rng(12)
    for _ in range(50):
        ch = random_any(rng, M=3)
        b1, b2 = rng.uniform(0, 1, 3), rng.uniform(0, 1, 3)
        h11, h12, h21, h22, p1, p2 = (np.diag(x) if k < 4 else x for k, x in enumerate(ch.arrays()))
        S1c, S2c = np.diag(b1 * p1), np.diag(b2 * p2)
        S1p, S2p = np.diag((1 - b1) * p1), np.diag((1 - b2) * p2)
        I = np.eye(3)

        def hl(A):
            return 0.5 * np.linalg.slogdet(A)[1] / np.log(2)

        Z1 = I + h11 @ S1p @ h11.T + h21 @ S2p @ h21.T
        Z2 = I + h12 @ S1p @ h12.T + h22 @ S2p @ h22.T
        Z1i, Z2i = np.linalg.inv(Z1), np.linalg.inv(Z2)
        r1c = min(hl(I + h11 @ S1c @ h11.T @ Z1i), hl(I + h12 @ S1c @ h12.T @ Z2i))
        r2c = min(hl(I + h21 @ S2c @ h21.T @ Z1i), hl(I + h22 @ S2c @ h22.T @ Z2i))
        r12c = min(hl(I + (h11 @ S1c @ h11.T + h21 @ S2c @ h21.T) @ Z1i),
                   hl(I + (h12 @ S1c @ h12.T + h22 @ S2c @ h22.T) @ Z2i))
        r1p = hl(I + h11 @ S1p @ h11.T @ np.linalg.inv(I + h21 @ S2p @ h21.T))
        r2p = hl(I + h22 @ S2p @ h22.T @ np.linalg.inv(I + h12 @ S1p @ h12.T))
        c = inner_bound_value(ch, SplitParams(tuple(b1), tuple(b2)))
        assert c.total == pytest.approx(min(r1c + r2c, r12c) + r1p + r2p, abs=1e-12)


def test_inner_at_zero_split_is_tin():
    rng = np.random.default_rng(13)
    for _ in range(1000):
        ch = random_any(rng)
        assert abs(inner_bound_value(ch, SplitParams(0, 0)).total - tin_sum_rate(ch)) <= 1e-12


def test_inner_never_exceeds_capacity():
    rng = np.random.default_rng(14)
    for _ in range(300):
        b = SplitParams(float(rng.uniform()), float(rng.uniform()))
        ch = random_strong(rng)
        assert inner_bound_value(ch, b).total <= sum_capacity_strong_joint(ch) + 1e-9
        ch = random_mixed(rng, orientation='AB'[int(rng.integers(0, 2))])
        assert inner_bound_value(ch, b).total <= sum_capacity_mixed_joint(ch) + 1e-9
        M = ch.M
        pb = SplitParams(tuple(rng.uniform(0, 1, M)), tuple(rng.uniform(0, 1, M)))
        assert inner_bound_value(ch, pb).total <= sum_capacity_mixed_joint(ch) + 1e-9


def test_golden_max():
    x, fx = _golden_max(lambda t: -(t - 0.3) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-6)
    x, fx = _golden_max(lambda t: t, 0.0, 1.0)
    assert (x, fx) == (1.0, 1.0)


def test_optimize_examples():
    rep = optimize_inner_bound(E1)
    assert rep.inner_joint == pytest.approx(1.0, abs=1e-6)
    assert rep.best_split.beta1 >= 0.9 and rep.best_split.beta2 >= 0.9
    rep = optimize_inner_bound(E4)
    assert rep.inner_joint >= 0.896906507 - 1e-9
    assert rep.inner_joint <= rep.outer_independent + 1e-9
    assert not rep.inseparable_certified
    rep = optimize_inner_bound(scale_powers(E2, 0))
    assert rep.inner_joint == 0.0
    with pytest.raises(ValueError):
        optimize_inner_bound(E1, grid=0.0)
    with pytest.raises(ValueError):
        optimize_inner_bound(E1, grid=0.6)
    with pytest.raises(ValueError):
        optimize_inner_bound(E1, tol=0)


def test_optimize_beats_grid_and_tin():
    rng = np.random.default_rng(15)
    pts = np.linspace(0, 1, 21)
    for _ in range(40):
        ch = random_any(rng)
        rep = optimize_inner_bound(ch, grid=0.05)
        grid_best = inner_bound_arrays(*ch.arrays(), pts[:, None, None], pts[None, :, None]).max()
        assert rep.inner_joint >= grid_best - 1e-12
        assert rep.inner_joint >= tin_sum_rate(ch) - 1e-9
        assert rep.inner_joint == pytest.approx(inner_bound_value(ch, rep.best_split).total, abs=1e-12)


def test_optimize_monotone_in_budget():
    rng = np.random.default_rng(16)
    for _ in range(20):
        ch = random_weak(rng, M=2)
        coarse = optimize_inner_bound(ch, grid=0.1, tol=1e-6).inner_joint
        fine = optimize_inner_bound(ch, grid=0.05, tol=1e-6).inner_joint
        assert fine >= coarse - 1e-6


def test_per_subchannel_mode_dominates_scalar():
    scalar = optimize_inner_bound(WEAK_INSEPARABLE, grid=0.05)
    per = optimize_inner_bound(WEAK_INSEPARABLE, grid=0.05, per_subchannel=True)
    assert per.inner_joint >= scalar.inner_joint - 1e-12
    assert per.best_split.per_subchannel


def test_certificate_none_cases():
    assert inseparability_certificate(E4, 1e-3) is None
    assert inseparability_certificate(scale_powers(WEAK_INSEPARABLE, 0), 1e-3) is None
    with pytest.raises(ChannelClassError):
        inseparability_certificate(E1)
    with pytest.raises(ValueError):
        inseparability_certificate(E4, margin=0)


def test_certificate_for_search_instance():
    cert = inseparability_certificate(WEAK_INSEPARABLE, 1e-3, per_subchannel=True)
    assert cert is not None
    assert cert.gap >= 1e-3
    assert cert.verify()
    again = Certificate.from_dict(json.loads(json.dumps(cert.as_dict())))
    assert again.verify()
    assert again.inner == cert.inner and again.channel == cert.channel


def test_certificate_verify_catches_tampering():
    cert = inseparability_certificate(WEAK_INSEPARABLE, 1e-3, per_subchannel=True)
    d = cert.as_dict()
    d['inner'] += 1e-6
    assert not Certificate.from_dict(d).verify()
    d = cert.as_dict()
    d['channel']['subchannels'][1]['p1'] = 1.0
    assert not Certificate.from_dict(d).verify()
