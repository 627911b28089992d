"""Parameter-space exploration.

* :func:`sweep_plane` classifies a grid of cross-gain ratios, the data
  behind a separable/inseparable region map.
* :func:`search_inseparable` draws random weak channels and looks for one
  where joint coding provably beats independent coding.
* :func:`asymptotic_ratio` tracks joint/independent sum capacity as all
  powers shrink toward zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .bounds import (DEFAULT_GRID, DEFAULT_MARGIN, DEFAULT_TOL, Certificate, SplitParams,
                     inner_bound_arrays, optimize_inner_bound, outer_bound_arrays)
from .capacity import sum_capacities
from .channel import ChannelInstance, Subchannel, classify, scale_powers
from .separability import analyze

__all__ = [
    'SweepSpec',
    'SweepRow',
    'SWEEP_COLUMNS',
    'sweep_plane',
    'SearchConfig',
    'Candidate',
    'SearchResult',
    'search_inseparable',
    'RatioPoint',
    'RatioSeries',
    'DEFAULT_SCALES',
    'asymptotic_ratio',
]

SWEEP_COLUMNS = ('x_ratio', 'y_ratio', 'aggregate_class', 'family', 'in_S1', 'in_S2',
                 'in_S3', 'in_M1', 'in_M2', 'in_N', 'remark2_unknown')

DEFAULT_SCALES = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)


def _axis(start: float, stop: float, step: float) -> np.ndarray:
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


@dataclass(frozen=True)
class SweepSpec:
    """A rectangular grid of cross-gain ratios around a template.

    ``x`` is ``|h12|/|h11|`` and ``y`` is ``|h21|/|h22|``; both axes are
    ``(start, stop, step)``.  The template fixes the direct gains and the
    powers; every grid point is replicated ``M`` times.
    """

    template: Subchannel
    x: tuple[float, float, float] = (0.1, 3.0, 0.1)
    y: tuple[float, float, float] = (0.1, 3.0, 0.1)
    M: int = 1

    def __post_init__(self):
        for name in ('x', 'y'):
            start, stop, step = (float(v) for v in getattr(self, name))
            if not (start > 0 and stop >= start and step > 0):
                raise ValueError(f'{name} range must have 0 < start <= stop and step > 0')
            object.__setattr__(self, name, (start, stop, step))
        if int(self.M) < 1:
            raise ValueError('M must be >= 1')

    def channel_at(self, x: float, y: float) -> ChannelInstance:
        t = self.template
        sub = Subchannel(t.h11, x * abs(t.h11), y * abs(t.h22), t.h22, t.p1, t.p2)
        return ChannelInstance((sub,) * int(self.M))


@dataclass(frozen=True)
class SweepRow:
    x_ratio: float
    y_ratio: float
    aggregate_class: str
    verdict: str
    family: Optional[str]
    in_S1: bool
    in_S2: bool
    in_S3: bool
    in_M1: bool
    in_M2: bool
    in_N: bool
    remark2_unknown: bool
    tie: bool

    def csv_values(self) -> tuple:
        family = self.family if self.family else self.verdict
        return (self.x_ratio, self.y_ratio, self.aggregate_class, family, self.in_S1,
                self.in_S2, self.in_S3, self.in_M1, self.in_M2, self.in_N,
                self.remark2_unknown)


def sweep_plane(spec: SweepSpec) -> list[SweepRow]:
    """Classify every point of the ratio grid, row-major in ``x`` then ``y``.

    Membership columns are true when every sub-channel is in the set.
    ``tie`` marks points on a class or family boundary.
    """
    rows = []
    for x in _axis(*spec.x):
        for y in _axis(*spec.y):
            ch = spec.channel_at(float(x), float(y))
            cls = classify(ch)
            v = analyze(ch)
            ms = v.memberships

            def every(attr):
                return all(bool(getattr(m, attr)) for m in ms)

            tie = len(cls.valid_aggregates) > 1 and cls.aggregate != 'Noisy'
            tie = tie or any(len(m.families) > 1 for m in ms)
            rows.append(SweepRow(
                x_ratio=float(x), y_ratio=float(y), aggregate_class=cls.aggregate,
                verdict=v.verdict, family=v.family,
                in_S1=every('in_S1'), in_S2=every('in_S2'), in_S3=every('in_S3'),
                in_M1=every('in_M1'), in_M2=every('in_M2'), in_N=every('in_N'),
                remark2_unknown=every('in_remark2_unknown'), tie=tie))
    return rows


@dataclass(frozen=True)
class SearchConfig:
    """Sampling and optimization settings of :func:`search_inseparable`.

    Cross ratios are log-uniform on ``cross_range`` (direct gains are 1),
    powers log-uniform on ``power_range``.  Every draw is screened with a
    coarse per-sub-channel coordinate search; the ``refine_top`` best are
    re-optimized at full resolution.
    """

    cross_range: tuple[float, float] = (0.05, 1.0)
    power_range: tuple[float, float] = (0.1, 100.0)
    screen_points: int = 11
    screen_sweeps: int = 2
    refine_top: int = 8
    grid: float = DEFAULT_GRID
    tol: float = DEFAULT_TOL
    margin: float = DEFAULT_MARGIN
    chunk: int = 20000

    def as_dict(self) -> dict:
        return {'distribution': 'log-uniform', 'direct_gain': 1.0,
                'cross_range': list(self.cross_range), 'power_range': list(self.power_range),
                'screen_points': self.screen_points, 'screen_sweeps': self.screen_sweeps,
                'refine_top': self.refine_top, 'grid': self.grid, 'tol': self.tol,
                'margin': self.margin}


@dataclass(frozen=True)
class Candidate:
    index: int
    channel: ChannelInstance
    split: SplitParams
    inner: float
    outer: float

    @property
    def gap(self) -> float:
        return self.inner - self.outer


@dataclass(frozen=True)
class SearchResult:
    seed: int
    budget: int
    M: int
    evaluated: int
    best: Candidate
    certificate: Optional[Certificate]
    config: SearchConfig = field(default_factory=SearchConfig)


def _draw(rng: np.random.Generator, n: int, M: int, cfg: SearchConfig):
    lc = np.log(cfg.cross_range)
    lp = np.log(cfg.power_range)
    r12 = np.exp(rng.uniform(lc[0], lc[1], (n, M)))
    r21 = np.exp(rng.uniform(lc[0], lc[1], (n, M)))
    p1 = np.exp(rng.uniform(lp[0], lp[1], (n, M)))
    p2 = np.exp(rng.uniform(lp[0], lp[1], (n, M)))
    return r12, r21, p1, p2


def _screen(r12, r21, p1, p2, cfg: SearchConfig):
    """Coarse inner-bound maximization for a batch; returns ``(value, betas)``."""
    n, M = r12.shape
    one = np.ones_like(r12)
    pts = np.linspace(0.0, 1.0, cfg.screen_points)
    best = np.full(n, -np.inf)
    x = np.zeros((n, 2 * M))
    for a in pts:
        for b in pts:
            v = inner_bound_arrays(one, r12, r21, one, p1, p2,
                                   np.full((n, 1), a), np.full((n, 1), b))
            better = v > best
            best[better] = v[better]
            x[better, :M] = a
            x[better, M:] = b
    for _ in range(cfg.screen_sweeps):
        for c in range(2 * M):
            for a in pts:
                y = x.copy()
                y[:, c] = a
                v = inner_bound_arrays(one, r12, r21, one, p1, p2, y[:, :M], y[:, M:])
                better = v > best
                best[better] = v[better]
                x[better] = y[better]
    return best, x


def search_inseparable(seed: int, budget: int, M: int = 2,
                       config: Optional[SearchConfig] = None) -> SearchResult:
    """Random search for a weak channel whose inner bound beats the outer bound.

    Deterministic in ``(seed, budget, M, config)``: the draws come from a
    single generator in index order and ties go to the lowest draw index.
    """
    cfg = config or SearchConfig()
    budget, M = int(budget), int(M)
    if budget < 1:
        raise ValueError('budget must be >= 1')
    if M < 2:
        raise ValueError('M must be >= 2')
    rng = np.random.default_rng(seed)
    r12, r21, p1, p2 = _draw(rng, budget, M, cfg)
    one = np.ones_like(r12)
    gaps = np.empty(budget)
    betas = np.empty((budget, 2 * M))
    for lo in range(0, budget, cfg.chunk):
        hi = min(budget, lo + cfg.chunk)
        inner, x = _screen(r12[lo:hi], r21[lo:hi], p1[lo:hi], p2[lo:hi], cfg)
        gaps[lo:hi] = inner - outer_bound_arrays(one[lo:hi], r12[lo:hi], r21[lo:hi],
                                                 one[lo:hi], p1[lo:hi], p2[lo:hi])
        betas[lo:hi] = x

    # stable sort keeps the lowest index first among equal gaps
    order = np.argsort(-gaps, kind='stable')[:max(1, cfg.refine_top)]
    best = None
    for k in order:
        k = int(k)
        ch = ChannelInstance.from_arrays(1.0, r12[k], r21[k], 1.0, p1[k], p2[k])
        start = SplitParams(tuple(betas[k, :M]), tuple(betas[k, M:]))
        report = optimize_inner_bound(ch, cfg.grid, cfg.tol, per_subchannel=True,
                                      margin=cfg.margin, start=start)
        cand = Candidate(k, ch, report.best_split, report.inner_joint,
                         report.outer_independent)
        if best is None or cand.gap > best.gap or (cand.gap == best.gap and k < best.index):
            best = cand

    certificate = None
    if best.gap >= cfg.margin:
        certificate = Certificate(best.channel, best.split, best.inner, best.outer,
                                  cfg.margin, seed)
    return SearchResult(seed, budget, M, budget, best, certificate, cfg)


@dataclass(frozen=True)
class RatioPoint:
    scale: float
    joint: float
    independent: float
    ratio: float


@dataclass(frozen=True)
class RatioSeries:
    channel_class: str
    points: tuple[RatioPoint, ...]

    @property
    def ratios(self) -> np.ndarray:
        return np.array([p.ratio for p in self.points])


def asymptotic_ratio(ch: ChannelInstance,
                     scales: Sequence[float] = DEFAULT_SCALES) -> RatioSeries:
    """Joint over independent sum capacity as every power is scaled down.

    Scales are visited in decreasing order.  The ratio is 1 when both
    capacities vanish.
    """
    scales = sorted((float(s) for s in scales), reverse=True)
    if not scales or any(not (s > 0 and math.isfinite(s)) for s in scales):
        raise ValueError('scales must be positive and finite')
    if len(set(scales)) != len(scales):
        raise ValueError('scales must be distinct')
    name = sum_capacities(ch)[0]
    points = []
    for s in scales:
        _, joint, indep = sum_capacities(scale_powers(ch, s))
        ratio = 1.0 if joint == 0.0 and indep == 0.0 else joint / indep
        points.append(RatioPoint(s, joint, indep, ratio))
    return RatioSeries(name, tuple(points))
