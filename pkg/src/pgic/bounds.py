"""Outer and inner sum-rate bounds for weak parallel interference channels.

The outer bound limits what independent (per-sub-channel) coding can
achieve.  The inner bound is the sum rate of a superposition scheme that
codes jointly across sub-channels: each user splits its power into a
common part, decoded at both receivers, and a private part, decoded only
at its own receiver.  With diagonal input covariances every log-det term
factorizes over sub-channels, so the inner bound is evaluated in closed
form and maximized numerically over the power splits.

When the optimized inner bound exceeds the outer bound, joint coding
strictly beats every independent code and the channel is inseparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import __version__
from .capacity import CAP_TOL
from .channel import WEAK, ChannelClassError, ChannelInstance, classify, half_log2, rate_arrays

__all__ = [
    'DEFAULT_GRID',
    'DEFAULT_TOL',
    'DEFAULT_MARGIN',
    'SplitParams',
    'InnerBoundComponents',
    'BoundsReport',
    'Certificate',
    'outer_bound_arrays',
    'outer_bound_independent',
    'inner_bound_arrays',
    'inner_bound_value',
    'optimize_inner_bound',
    'inseparability_certificate',
]

DEFAULT_GRID = 0.01
DEFAULT_TOL = 1e-6
DEFAULT_MARGIN = 1e-3
DEFAULT_SWEEPS = 3

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

Beta = Union[float, tuple[float, ...]]


@dataclass(frozen=True)
class SplitParams:
    """Fraction of each user's power spent on its common message.

    In scalar mode ``beta1``/``beta2`` are numbers applied to every
    sub-channel; in per-sub-channel mode they are length-M tuples.
    """

    beta1: Beta
    beta2: Beta

    def __post_init__(self):
        for name in ('beta1', 'beta2'):
            value = getattr(self, name)
            if np.ndim(value) == 0:
                value = float(value)
                values = (value,)
            else:
                value = tuple(float(v) for v in np.ravel(value))
                values = value
            for v in values:
                if not (0.0 <= v <= 1.0):
                    raise ValueError(f'{name} entries must lie in [0, 1], got {v!r}')
            object.__setattr__(self, name, value)
        if np.ndim(self.beta1) != np.ndim(self.beta2):
            raise ValueError('beta1 and beta2 must both be scalars or both be vectors')
        if self.per_subchannel and len(self.beta1) != len(self.beta2):
            raise ValueError('beta1 and beta2 must have the same length')

    @property
    def per_subchannel(self) -> bool:
        return isinstance(self.beta1, tuple)

    @property
    def mode(self) -> str:
        return 'per-subchannel' if self.per_subchannel else 'scalar'

    def arrays(self, M: int) -> tuple[np.ndarray, np.ndarray]:
        if self.per_subchannel and len(self.beta1) != M:
            raise ValueError(f'split has {len(self.beta1)} entries, channel has {M} sub-channels')
        return (np.broadcast_to(np.asarray(self.beta1, dtype=float), (M,)),
                np.broadcast_to(np.asarray(self.beta2, dtype=float), (M,)))

    def as_dict(self) -> dict:
        b1 = list(self.beta1) if self.per_subchannel else self.beta1
        b2 = list(self.beta2) if self.per_subchannel else self.beta2
        return {'mode': self.mode, 'beta1': b1, 'beta2': b2}

    @classmethod
    def from_dict(cls, d: dict) -> 'SplitParams':
        b1, b2 = d['beta1'], d['beta2']
        if d.get('mode', 'scalar') == 'per-subchannel':
            return cls(tuple(b1), tuple(b2))
        return cls(float(b1), float(b2))


@dataclass(frozen=True)
class InnerBoundComponents:
    r1c: float
    r2c: float
    r12c: float
    r1p: float
    r2p: float
    z1_diag: tuple[float, ...]
    z2_diag: tuple[float, ...]
    total: float

    def as_dict(self) -> dict:
        return {'r1c': self.r1c, 'r2c': self.r2c, 'r12c': self.r12c, 'r1p': self.r1p,
                'r2p': self.r2p, 'z1_diag': list(self.z1_diag),
                'z2_diag': list(self.z2_diag), 'total': self.total}


def outer_bound_arrays(h11, h12, h21, h22, p1, p2) -> np.ndarray:
    """Per-sub-channel outer-bound terms, summed over the last axis."""
    q = rate_arrays(h11, h12, h21, h22, p1, p2)
    terms = np.minimum(np.minimum(q['a'] + q['h'], q['d'] + q['g']), q['i'] + q['j'])
    return np.sum(terms, axis=-1)


def outer_bound_independent(ch: ChannelInstance) -> float:
    """Upper bound on the independent-coding sum capacity (any class)."""
    return float(outer_bound_arrays(*ch.arrays()))


def inner_bound_arrays(h11, h12, h21, h22, p1, p2, beta1, beta2, *, components=False):
    """Superposition-coding sum rate for broadcastable arrays.

    Channel parameters have sub-channels on the last axis; ``beta1`` and
    ``beta2`` broadcast against them (a trailing axis of length 1 gives a
    scalar split, length M a per-sub-channel split).  Returns the total,
    or a dict of all component rates with ``components=True``.
    """
    g11, g12 = np.square(h11), np.square(h12)
    g21, g22 = np.square(h21), np.square(h22)
    c1, c2 = beta1 * p1, beta2 * p2
    q1, q2 = (1.0 - beta1) * p1, (1.0 - beta2) * p2
    z1 = 1.0 + g11 * q1 + g21 * q2
    z2 = 1.0 + g12 * q1 + g22 * q2

    def total(x):
        return np.sum(half_log2(x), axis=-1)

    r1c = np.minimum(total(g11 * c1 / z1), total(g12 * c1 / z2))
    r2c = np.minimum(total(g21 * c2 / z1), total(g22 * c2 / z2))
    r12c = np.minimum(total((g11 * c1 + g21 * c2) / z1), total((g12 * c1 + g22 * c2) / z2))
    r1p = total(g11 * q1 / (1.0 + g21 * q2))
    r2p = total(g22 * q2 / (1.0 + g12 * q1))
    value = np.minimum(r1c + r2c, r12c) + r1p + r2p
    if components:
        return {'r1c': r1c, 'r2c': r2c, 'r12c': r12c, 'r1p': r1p, 'r2p': r2p,
                'z1': z1, 'z2': z2, 'total': value}
    return value


def inner_bound_value(ch: ChannelInstance, split: SplitParams) -> InnerBoundComponents:
    """Evaluate the superposition inner bound at a fixed split."""
    b1, b2 = split.arrays(ch.M)
    parts = inner_bound_arrays(*ch.arrays(), b1, b2, components=True)
    return InnerBoundComponents(
        r1c=float(parts['r1c']), r2c=float(parts['r2c']), r12c=float(parts['r12c']),
        r1p=float(parts['r1p']), r2p=float(parts['r2p']),
        z1_diag=tuple(float(z) for z in parts['z1']),
        z2_diag=tuple(float(z) for z in parts['z2']),
        total=float(parts['total']))


@dataclass(frozen=True)
class BoundsReport:
    outer_independent: float
    inner_joint: float
    best_split: SplitParams
    components: InnerBoundComponents
    inseparable_certified: bool
    margin: float
    channel_class: str = ''

    @property
    def gap(self) -> float:
        """Inner minus outer bound; positive means joint coding wins."""
        return self.inner_joint - self.outer_independent


def _grid_points(resolution: float) -> np.ndarray:
    n = int(math.ceil(1.0 / resolution - 1e-9))
    return np.linspace(0.0, 1.0, n + 1)


def _golden_max(fun, lo: float, hi: float, tol: float = 1e-9, maxiter: int = 200):
    """Maximize a unimodal-ish ``fun`` on ``[lo, hi]``; returns ``(x, f(x))``.

    The endpoints are evaluated too, so the result is never worse than
    either of them.
    """
    best = max(((lo, fun(lo)), (hi, fun(hi))), key=lambda t: t[1])
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(maxiter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fun(d)
    for x, fx in ((c, fc), (d, fd)):
        if fx > best[1]:
            best = (x, fx)
    return best


def _refine(objective, x: np.ndarray, fx: float, step: float, tol: float, max_rounds: int = 50):
    """Alternating golden-section refinement of each coordinate of ``x``."""
    x = x.copy()
    for _ in range(max_rounds):
        start = fx
        for k in range(len(x)):
            lo, hi = max(0.0, x[k] - step), min(1.0, x[k] + step)

            def along(t, k=k):
                y = x.copy()
                y[k] = t
                return objective(y)

            t, ft = _golden_max(along, lo, hi)
            if ft > fx:
                x[k], fx = t, ft
        if fx - start < tol:
            break
    return x, fx


def optimize_inner_bound(ch: ChannelInstance, grid: float = DEFAULT_GRID,
                         tol: float = DEFAULT_TOL, *, per_subchannel: bool = False,
                         sweeps: int = DEFAULT_SWEEPS,
                         margin: float = DEFAULT_MARGIN,
                         start: Optional[SplitParams] = None) -> BoundsReport:
    """Maximize the inner bound over the common/private power split.

    A grid over ``(beta1, beta2)`` at spacing ``grid`` is followed by
    alternating golden-section refinement until the gain drops below
    ``tol``.  With ``per_subchannel`` the scalar optimum seeds a
    coordinate search over every ``beta_{k,m}`` (``sweeps`` passes, each a
    1-D grid scan plus refinement).  Ties on the grid go to the
    lexicographically smallest ``(beta1, beta2)``.  A ``start`` split, when
    given, seeds the per-sub-channel search if it beats the scalar optimum.
    """
    if not (0.0 < grid <= 0.5):
        raise ValueError(f'grid must lie in (0, 0.5], got {grid!r}')
    if not tol > 0:
        raise ValueError(f'tol must be > 0, got {tol!r}')
    params = ch.arrays()
    M = ch.M
    pts = _grid_points(grid)
    values = inner_bound_arrays(*params, pts[:, None, None], pts[None, :, None])
    k = int(np.argmax(values))
    i, j = divmod(k, len(pts))
    best_x = np.array([pts[i], pts[j]])
    best_f = float(values[i, j])

    def scalar_objective(x):
        return float(inner_bound_arrays(*params, x[0], x[1]))

    best_x, best_f = _refine(scalar_objective, best_x, best_f, grid, tol)
    split = SplitParams(float(best_x[0]), float(best_x[1]))

    if per_subchannel:
        x = np.concatenate([np.full(M, best_x[0]), np.full(M, best_x[1])])

        def vector_objective(y):
            return float(inner_bound_arrays(*params, y[:M], y[M:]))

        fx = best_f
        if start is not None:
            s1, s2 = start.arrays(M)
            y = np.concatenate([s1, s2])
            fy = vector_objective(y)
            if fy > fx:
                x, fx = y, fy
        for _ in range(sweeps):
            start = fx
            for c in range(2 * M):
                trial = np.repeat(x[None, :], len(pts), axis=0)
                trial[:, c] = pts
                vals = inner_bound_arrays(*params, trial[:, :M], trial[:, M:])
                n = int(np.argmax(vals))
                if vals[n] > fx:
                    x, fx = trial[n].copy(), float(vals[n])
            x, fx = _refine(vector_objective, x, fx, grid, tol)
            if fx - start < tol:
                break
        if fx > best_f:
            best_f = fx
            split = SplitParams(tuple(x[:M]), tuple(x[M:]))

    components = inner_bound_value(ch, split)
    outer = outer_bound_independent(ch)
    cls = classify(ch)
    certified = bool(cls.allows(WEAK) and components.total - outer >= margin)
    return BoundsReport(outer_independent=outer, inner_joint=components.total,
                        best_split=split, components=components,
                        inseparable_certified=certified, margin=margin,
                        channel_class=cls.aggregate)


@dataclass(frozen=True)
class Certificate:
    """Self-contained evidence that joint coding beats independent coding.

    ``verify`` recomputes both bounds from the raw channel data.
    """

    channel: ChannelInstance
    split: SplitParams
    inner: float
    outer: float
    margin: float
    seed: Optional[int] = None
    version: str = field(default=__version__)

    @property
    def gap(self) -> float:
        return self.inner - self.outer

    def verify(self, tol: float = CAP_TOL) -> bool:
        if not classify(self.channel).allows(WEAK):
            return False
        inner = inner_bound_value(self.channel, self.split).total
        outer = outer_bound_independent(self.channel)
        return (abs(inner - self.inner) <= tol and abs(outer - self.outer) <= tol
                and inner - outer >= self.margin)

    def as_dict(self) -> dict:
        return {
            'schema': 1,
            'kind': 'inseparability-certificate',
            'version': self.version,
            'channel': {'subchannels': [s.as_dict() for s in self.channel]},
            'split': self.split.as_dict(),
            'inner': self.inner,
            'outer': self.outer,
            'gap': self.gap,
            'margin': self.margin,
            'seed': self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> 'Certificate':
        ch = ChannelInstance.from_rows(
            (s['h11'], s['h12'], s['h21'], s['h22'], s['p1'], s['p2'])
            for s in d['channel']['subchannels'])
        return cls(channel=ch, split=SplitParams.from_dict(d['split']),
                   inner=float(d['inner']), outer=float(d['outer']),
                   margin=float(d['margin']), seed=d.get('seed'),
                   version=d.get('version', __version__))


def inseparability_certificate(ch: ChannelInstance, margin: float = DEFAULT_MARGIN,
                               grid: float = DEFAULT_GRID, tol: float = DEFAULT_TOL, *,
                               per_subchannel: bool = False,
                               seed: Optional[int] = None) -> Optional[Certificate]:
    """Return a certificate when the inner bound beats the outer by ``margin``."""
    cls = classify(ch)
    if not cls.allows(WEAK):
        raise ChannelClassError(f'channel class is {cls.aggregate}, expected Weak', cls)
    if not margin > 0:
        raise ValueError(f'margin must be > 0, got {margin!r}')
    report = optimize_inner_bound(ch, grid, tol, per_subchannel=per_subchannel, margin=margin)
    if report.inner_joint - report.outer_independent < margin:
        return None
    return Certificate(ch, report.best_split, report.inner_joint,
                       report.outer_independent, margin, seed)
