"""Sum capacities of strong and mixed parallel interference channels.

Joint coding codes across all sub-channels at once; independent coding
uses a separate code per sub-channel.  For the strong and mixed classes
both sum capacities have closed forms in terms of the rate quantities of
:mod:`pgic.channel`, and the difference between them is what the
separability tests in :mod:`pgic.separability` look at.

The log-det helpers evaluate the general covariance forms so that the
optimality of full-power diagonal inputs can be checked numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import (MIXED_A, MIXED_B, STRONG, ChannelClassError, ChannelInstance,
                      RateQuantities, classify, rate_quantities)

__all__ = [
    'CAP_TOL',
    'PSD_TOL',
    'RegionPolygon',
    'Condition21',
    'ConcavityCheck',
    'check_covariance',
    'sum_capacity_strong_joint',
    'sum_capacity_strong_independent',
    'sum_capacity_mixed_joint',
    'sum_capacity_mixed_independent',
    'sum_capacities',
    'tin_sum_rate',
    'strong_region_polygon',
    'region_bound_values',
    'check_condition_21',
    'midpoint_concavity_check',
]

#: Absolute tolerance (bits) for comparing capacities.
CAP_TOL = 1e-9
#: Absolute floor on eigenvalues / diagonal mismatch for covariances.
PSD_TOL = 1e-10


def _require(ch: ChannelInstance, *allowed: str):
    cls = classify(ch)
    for name in allowed:
        if cls.allows(name):
            return cls, name
    raise ChannelClassError(
        f'channel class is {cls.aggregate}, expected one of {", ".join(allowed)}', cls)


def _mixed_rates(ch: ChannelInstance) -> RateQuantities:
    """Rate quantities oriented so that the MixedA formulas apply."""
    _, name = _require(ch, MIXED_A, MIXED_B)
    q = rate_quantities(ch)
    return q if name == MIXED_A else q.swapped()


def sum_capacity_strong_joint(ch: ChannelInstance) -> float:
    _require(ch, STRONG)
    q = rate_quantities(ch)
    return float(min(np.sum(q.a + q.d), np.sum(q.e), np.sum(q.f)))


def sum_capacity_strong_independent(ch: ChannelInstance) -> float:
    _require(ch, STRONG)
    q = rate_quantities(ch)
    return float(np.sum(np.minimum(np.minimum(q.a + q.d, q.e), q.f)))


def sum_capacity_mixed_joint(ch: ChannelInstance) -> float:
    """Joint-coding sum capacity of a mixed channel.

    MixedB channels (the mirror orientation) are evaluated with the users
    relabelled.
    """
    q = _mixed_rates(ch)
    return float(min(np.sum(q.f), np.sum(q.d + q.g)))


def sum_capacity_mixed_independent(ch: ChannelInstance) -> float:
    q = _mixed_rates(ch)
    return float(np.sum(np.minimum(q.f, q.d + q.g)))


def sum_capacities(ch: ChannelInstance) -> tuple[str, float, float]:
    """Return ``(class, joint, independent)`` for a strong or mixed channel."""
    cls, name = _require(ch, STRONG, MIXED_A, MIXED_B)
    if name == STRONG:
        return name, sum_capacity_strong_joint(ch), sum_capacity_strong_independent(ch)
    return name, sum_capacity_mixed_joint(ch), sum_capacity_mixed_independent(ch)


def tin_sum_rate(ch: ChannelInstance) -> float:
    """Sum rate of single-user decoding with interference treated as noise."""
    q = rate_quantities(ch)
    return float(np.sum(q.g + q.h))


@dataclass(frozen=True)
class RegionPolygon:
    """Convex rate region as a counter-clockwise vertex list (R1, R2)."""

    vertices: tuple[tuple[float, float], ...]

    def contains(self, r1: float, r2: float, tol: float = CAP_TOL) -> bool:
        v = np.asarray(self.vertices)
        if len(v) == 1:
            return abs(r1 - v[0, 0]) <= tol and abs(r2 - v[0, 1]) <= tol
        for k in range(len(v)):
            x0, y0 = v[k]
            x1, y1 = v[(k + 1) % len(v)]
            if (x1 - x0) * (r2 - y0) - (y1 - y0) * (r1 - x0) < -tol:
                return False
        return True

    @property
    def max_sum_rate(self) -> float:
        return max(x + y for x, y in self.vertices)


def strong_region_polygon(ch: ChannelInstance) -> RegionPolygon:
    """Capacity region of a strong channel at full diagonal power."""
    _require(ch, STRONG)
    q = rate_quantities(ch)
    r1max = float(np.sum(q.a))
    r2max = float(np.sum(q.d))
    smax = float(min(np.sum(q.e), np.sum(q.f)))
    x = min(r1max, smax)
    y = min(r2max, smax)
    candidates = [(0.0, 0.0), (x, 0.0), (x, min(y, smax - x)),
                  (min(x, smax - y), y), (0.0, y)]
    vertices = []
    for v in candidates:
        if not vertices or (abs(v[0] - vertices[-1][0]) > CAP_TOL
                            or abs(v[1] - vertices[-1][1]) > CAP_TOL):
            vertices.append(v)
    while len(vertices) > 1 and (abs(vertices[0][0] - vertices[-1][0]) <= CAP_TOL
                                 and abs(vertices[0][1] - vertices[-1][1]) <= CAP_TOL):
        vertices.pop()
    return RegionPolygon(tuple(vertices))


def check_covariance(S, power=None, *, exact_diag: bool = False, name: str = 'S') -> np.ndarray:
    """Validate a covariance matrix and return it as a float array.

    With ``power`` given, the diagonal must not exceed it (or must match it
    when ``exact_diag``).
    """
    S = np.atleast_2d(np.asarray(S, dtype=float))
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError(f'{name} must be a square matrix, got shape {S.shape}')
    if not np.all(np.isfinite(S)):
        raise ValueError(f'{name} has non-finite entries')
    if not np.allclose(S, S.T, rtol=0.0, atol=PSD_TOL):
        raise ValueError(f'{name} is not symmetric')
    if np.linalg.eigvalsh(S).min() < -PSD_TOL:
        raise ValueError(f'{name} is not positive semidefinite')
    if power is not None:
        power = np.asarray(power, dtype=float)
        if power.shape != (S.shape[0],):
            raise ValueError(f'{name} is {S.shape[0]}x{S.shape[0]}, power has shape {power.shape}')
        diag = np.diag(S)
        if exact_diag:
            if np.any(np.abs(diag - power) > PSD_TOL):
                raise ValueError(f'diag({name}) must equal the power limits')
        elif np.any(diag > power + PSD_TOL):
            raise ValueError(f'diag({name}) exceeds the power limits')
    return S


def _half_logdet(A: np.ndarray) -> float:
    sign, logdet = np.linalg.slogdet(A)
    if sign <= 0:
        raise ValueError('matrix is not positive definite')
    return 0.5 * logdet / math.log(2.0)


def region_bound_values(ch: ChannelInstance, S1, S2) -> tuple[float, float, float, float]:
    """The four log-det bounds of the strong-channel capacity region.

    Returns ``(R1 bound, R2 bound, sum bound at receiver 1, sum bound at
    receiver 2)`` for input covariances ``S1`` and ``S2``.
    """
    h11, h12, h21, h22, p1, p2 = ch.arrays()
    S1 = check_covariance(S1, p1, name='S1')
    S2 = check_covariance(S2, p2, name='S2')
    H11, H12, H21, H22 = (np.diag(h) for h in (h11, h12, h21, h22))
    eye = np.eye(ch.M)
    t11 = H11 @ S1 @ H11.T
    t12 = H12 @ S1 @ H12.T
    t21 = H21 @ S2 @ H21.T
    t22 = H22 @ S2 @ H22.T
    return (_half_logdet(eye + t11), _half_logdet(eye + t22),
            _half_logdet(eye + t11 + t21), _half_logdet(eye + t12 + t22))


@dataclass(frozen=True)
class Condition21:
    holds: bool
    lhs: float
    rhs: float


def check_condition_21(ch: ChannelInstance, S2, tol: float = 1e-10) -> Condition21:
    """Compare the user-2 determinant ratio at ``S2`` with its diagonal value.

    ``lhs = |I + H22^2 S2| / |I + H21^2 S2|`` and ``rhs`` is the same ratio
    with ``S2`` replaced by its diagonal.  ``holds`` is ``lhs <= rhs`` up to
    a relative ``tol``.
    """
    h11, h12, h21, h22, p1, p2 = ch.arrays()
    if np.any(np.abs(h21) > np.abs(h22) * (1 + 1e-12)):
        raise ValueError('the determinant condition needs |h21| <= |h22| on every sub-channel')
    S2 = check_covariance(S2, p2, exact_diag=True, name='S2')
    eye = np.eye(ch.M)
    _, num = np.linalg.slogdet(eye + np.diag(h22 ** 2) @ S2)
    _, den = np.linalg.slogdet(eye + np.diag(h21 ** 2) @ S2)
    log_lhs = num - den
    log_rhs = float(np.sum(np.log1p(h22 ** 2 * p2) - np.log1p(h21 ** 2 * p2)))
    return Condition21(bool(log_lhs <= log_rhs + tol * max(1.0, abs(log_rhs))),
                       float(math.exp(log_lhs)), float(math.exp(log_rhs)))


@dataclass(frozen=True)
class ConcavityCheck:
    ok: bool
    slack: float


def _joint_sum_capacity(ch: ChannelInstance) -> float:
    return sum_capacities(ch)[1]


def midpoint_concavity_check(chA: ChannelInstance, chB: ChannelInstance,
                             lam: float) -> ConcavityCheck:
    """Check concavity of the joint sum capacity along a power segment.

    ``slack`` is ``C(lam*PA + (1-lam)*PB) - lam*C(PA) - (1-lam)*C(PB)``.
    """
    if not chA.same_coefficients(chB):
        raise ValueError('channels must share their gains and differ only in powers')
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f'lam must lie in [0, 1], got {lam!r}')
    pa1, pa2 = chA.column('p1'), chA.column('p2')
    pb1, pb2 = chB.column('p1'), chB.column('p2')
    if lam == 1.0:
        mid = chA
    elif lam == 0.0:
        mid = chB
    else:
        mid = chA.with_powers(lam * pa1 + (1 - lam) * pb1, lam * pa2 + (1 - lam) * pb2)
    lhs = _joint_sum_capacity(mid)
    rhs = lam * _joint_sum_capacity(chA) + (1 - lam) * _joint_sum_capacity(chB)
    slack = lhs - rhs
    return ConcavityCheck(bool(slack >= -CAP_TOL), float(slack))
