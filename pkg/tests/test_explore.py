import numpy as np
import pytest

from pgic import ChannelInstance, Subchannel, classify
from pgic.explore import (DEFAULT_SCALES, SearchConfig, SweepSpec, asymptotic_ratio,
                          search_inseparable, sweep_plane)

from helpers import E1, E2, E4, E5, random_mixed, random_strong

TEMPLATE = Subchannel(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)


def _point(x, y, M=1):
    rows = sweep_plane(SweepSpec(TEMPLATE, (x, x, 0.1), (y, y, 0.1), M))
    assert len(rows) == 1
    return rows[0]


def test_sweep_points():
    r = _point(2.0, 2.0)
    assert (r.aggregate_class, r.verdict, r.family, r.in_S1) == ('Strong', 'Separable', 'S1', True)
    r = _point(0.4, 0.4)
    assert (r.aggregate_class, r.family, r.in_N) == ('Noisy', 'Noisy', True)
    r = _point(0.7, 0.7)
    assert (r.aggregate_class, r.verdict, r.remark2_unknown) == ('Weak', 'Unknown', True)
    assert r.csv_values()[3] == 'Unknown'
    r = _point(2.0, 0.5)
    assert r.aggregate_class == 'MixedA' and r.verdict == 'Separable'
    assert r.family in ('M1', 'M2')


def test_sweep_grid_shape_and_order():
    rows = sweep_plane(SweepSpec(TEMPLATE, (0.1, 3.0, 0.1), (0.1, 3.0, 0.1)))
    assert len(rows) == 30 * 30
    assert rows[0].x_ratio == pytest.approx(0.1) and rows[1].y_ratio == pytest.approx(0.2)
    assert rows[-1].x_ratio == pytest.approx(3.0) and rows[-1].y_ratio == pytest.approx(3.0)


def test_sweep_families_disjoint():
    rows = sweep_plane(SweepSpec(TEMPLATE, (0.05, 3.0, 0.15), (0.05, 3.0, 0.15), M=2))
    for r in rows:
        strong = [r.in_S1, r.in_S2, r.in_S3]
        mixed = [r.in_M1, r.in_M2]
        assert sum(strong) <= 1 or r.tie
        assert sum(mixed) <= 1 or r.tie
        if r.aggregate_class == 'Strong' and not r.tie:
            assert sum(strong) == 1 and r.verdict == 'Separable'
        if r.aggregate_class in ('MixedA', 'MixedB') and not r.tie:
            assert sum(mixed) == 1


def test_sweep_matches_classify():
    spec = SweepSpec(Subchannel(1.5, 1.0, 1.0, 0.8, 2.0, 0.5), (0.2, 2.0, 0.3), (0.2, 2.0, 0.3))
    for r in sweep_plane(spec):
        assert classify(spec.channel_at(r.x_ratio, r.y_ratio)).aggregate == r.aggregate_class


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(TEMPLATE, (0.0, 1.0, 0.1))
    with pytest.raises(ValueError):
        SweepSpec(TEMPLATE, (1.0, 0.5, 0.1))
    with pytest.raises(ValueError):
        SweepSpec(TEMPLATE, (0.1, 1.0, 0.0))
    with pytest.raises(ValueError):
        SweepSpec(TEMPLATE, M=0)


def test_search_deterministic():
    a = search_inseparable(7, 300, M=2)
    b = search_inseparable(7, 300, M=2)
    assert a.best == b.best
    assert (a.certificate is None) == (b.certificate is None)
    assert a.evaluated == 300
    assert classify(a.best.channel).allows('Weak')
    c = search_inseparable(8, 300, M=2)
    assert c.best.channel != a.best.channel


def test_search_small_budget():
    res = search_inseparable(1, 1, M=3)
    assert res.best.index == 0 and res.best.channel.M == 3
    assert res.best.inner >= 0 and res.best.outer >= 0
    with pytest.raises(ValueError):
        search_inseparable(1, 0)
    with pytest.raises(ValueError):
        search_inseparable(1, 10, M=1)


def test_search_certificate_verifies():
    res = search_inseparable(1, 20000, M=2)
    assert res.certificate is not None
    assert res.certificate.verify()
    assert res.best.gap >= SearchConfig().margin


def test_asymptotic_examples():
    s = asymptotic_ratio(E2, [1.0])
    assert s.channel_class == 'Strong'
    assert s.points[0].ratio == pytest.approx(2.0 / 1.682573297, abs=1e-5)
    for ch in (E2, E5):
        s = asymptotic_ratio(ch)
        assert [p.scale for p in s.points] == list(DEFAULT_SCALES)
        r = s.points[3].ratio
        assert 1 - 1e-9 <= r <= 1 + 1e-3
        assert np.all(np.diff(s.ratios) <= 1e-6)
    s = asymptotic_ratio(E1, [1e-3, 1e-1])
    assert [p.scale for p in s.points] == [1e-1, 1e-3]


def test_asymptotic_zero_power():
    ch = ChannelInstance.from_rows([(1, 2, 2, 1, 0, 0)])
    s = asymptotic_ratio(ch, [1.0, 0.5])
    assert all(p.ratio == 1.0 and p.joint == 0.0 for p in s.points)


def test_asymptotic_random_monotone():
    rng = np.random.default_rng(21)
    for _ in range(30):
        for ch in (random_strong(rng), random_mixed(rng)):
            s = asymptotic_ratio(ch)
            assert np.all(s.ratios >= 1 - 1e-9)
            assert np.all(np.diff(s.ratios) <= 1e-6)


def test_asymptotic_validation():
    for bad in ([], [0.0], [-1.0], [float('inf')], [0.1, 0.1]):
        with pytest.raises(ValueError):
            asymptotic_ratio(E2, bad)
    from pgic import ChannelClassError
    with pytest.raises(ChannelClassError):
        asymptotic_ratio(E4)


def test_ratio_can_rise_before_returning_to_one():
    # both sub-channels share a mixed family at scale 0.1 and below 1e-3 but
    # not in between, so the joint/independent ratio is not monotone in power
    ch = ChannelInstance.from_rows([
        (-1.6624776862104143, 1.7488385399207507, 0.42817233953883505, -1.315012541709279,
         1.1013670748376707, 3.8251127662677256),
        (0.8872050257324143, -0.8876298773332872, 0.22609670645814672, 0.6774354132095868,
         0.977759469187378, 2.8171543967282116)])
    r = asymptotic_ratio(ch).ratios
    assert r[0] == 1.0 and r[1] == pytest.approx(1.0006938878677984, abs=1e-12)
    assert r[2] == pytest.approx(1.000012528403487, abs=1e-12) and r[3] == r[4] == 1.0
