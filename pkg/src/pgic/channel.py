"""Channel model for two-user parallel Gaussian interference channels.

A channel is a list of independent real scalar sub-channels.  Each
sub-channel carries four gains ``h_kl`` (transmitter ``k`` to receiver
``l``) and the two per-sub-channel power limits ``p1``, ``p2``.  Noise is
unit variance at both receivers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    'EPS_TIE',
    'leq',
    'Subchannel',
    'ChannelInstance',
    'RateQuantities',
    'SubchannelFlags',
    'ChannelClass',
    'ChannelClassError',
    'half_log2',
    'subchannel_flags',
    'rate_arrays',
    'rate_quantities',
    'classify',
    'scale_powers',
]

#: Relative slack used for every magnitude comparison.
EPS_TIE = 1e-12

STRONG = 'Strong'
MIXED_A = 'MixedA'
MIXED_B = 'MixedB'
NOISY = 'Noisy'
WEAK = 'Weak'
UNCLASSIFIED = 'Unclassified'

def leq(x: float, y: float, eps: float = EPS_TIE) -> bool:
    """``x <= y`` with a relative slack of ``eps`` in favour of ``True``."""
    return x <= y + eps * max(abs(x), abs(y))


class ChannelClassError(ValueError):
    """Raised when an operation is called on a channel of the wrong class.

    The offending :class:`ChannelClass` is kept in ``channel_class``.
    """

    def __init__(self, message: str, channel_class: 'ChannelClass'):
        super().__init__(message)
        self.channel_class = channel_class


@dataclass(frozen=True)
class Subchannel:
    """One real scalar interference sub-channel."""

    h11: float
    h12: float
    h21: float
    h22: float
    p1: float
    p2: float

    def __post_init__(self):
        for name in ('h11', 'h12', 'h21', 'h22', 'p1', 'p2'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(
                    value, (int, float, np.integer, np.floating)):
                raise TypeError(f'{name} must be a real number, got {value!r}')
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(f'{name} must be finite, got {value!r}')
            object.__setattr__(self, name, value)
        for name in ('h11', 'h12', 'h21', 'h22'):
            if getattr(self, name) == 0.0:
                raise ValueError(f'{name} must be non-zero')
        for name in ('p1', 'p2'):
            if getattr(self, name) < 0.0:
                raise ValueError(f'{name} must be >= 0, got {getattr(self, name)!r}')

    @property
    def cross_ratio_1(self) -> float:
        """|h12| / |h11|: interference of user 1 at receiver 2, relative."""
        return abs(self.h12) / abs(self.h11)

    @property
    def cross_ratio_2(self) -> float:
        """|h21| / |h22|."""
        return abs(self.h21) / abs(self.h22)

    def swapped(self) -> 'Subchannel':
        """Relabel the users (1 <-> 2)."""
        return Subchannel(self.h22, self.h21, self.h12, self.h11, self.p2, self.p1)

    def with_powers(self, p1: float, p2: float) -> 'Subchannel':
        return Subchannel(self.h11, self.h12, self.h21, self.h22, p1, p2)

    def as_dict(self) -> dict:
        return {'h11': self.h11, 'h12': self.h12, 'h21': self.h21,
                'h22': self.h22, 'p1': self.p1, 'p2': self.p2}


@dataclass(frozen=True)
class ChannelInstance:
    """A parallel interference channel made of ``M >= 1`` sub-channels."""

    subchannels: tuple[Subchannel, ...]

    def __post_init__(self):
        subs = tuple(self.subchannels)
        if len(subs) < 1:
            raise ValueError('a channel needs at least one sub-channel')
        for k, sub in enumerate(subs):
            if not isinstance(sub, Subchannel):
                raise TypeError(f'subchannels[{k}] is not a Subchannel')
        object.__setattr__(self, 'subchannels', subs)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]]) -> 'ChannelInstance':
        """Build from ``(h11, h12, h21, h22, p1, p2)`` rows."""
        return cls(tuple(Subchannel(*row) for row in rows))

    @classmethod
    def from_arrays(cls, h11, h12, h21, h22, p1, p2) -> 'ChannelInstance':
        cols = np.broadcast_arrays(*(np.atleast_1d(np.asarray(x, dtype=float))
                                     for x in (h11, h12, h21, h22, p1, p2)))
        return cls.from_rows(zip(*(c.tolist() for c in cols)))

    @property
    def M(self) -> int:
        return len(self.subchannels)

    def __len__(self) -> int:
        return len(self.subchannels)

    def __iter__(self):
        return iter(self.subchannels)

    def __getitem__(self, m: int) -> Subchannel:
        return self.subchannels[m]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(s, name) for s in self.subchannels])

    def arrays(self) -> tuple[np.ndarray, ...]:
        """Return ``(h11, h12, h21, h22, p1, p2)`` as length-M arrays."""
        return tuple(self.column(n) for n in ('h11', 'h12', 'h21', 'h22', 'p1', 'p2'))

    def swapped(self) -> 'ChannelInstance':
        return ChannelInstance(tuple(s.swapped() for s in self.subchannels))

    def with_powers(self, p1, p2) -> 'ChannelInstance':
        p1 = np.broadcast_to(np.asarray(p1, dtype=float), (self.M,))
        p2 = np.broadcast_to(np.asarray(p2, dtype=float), (self.M,))
        return ChannelInstance(tuple(s.with_powers(float(a), float(b))
                                     for s, a, b in zip(self.subchannels, p1, p2)))

    def same_coefficients(self, other: 'ChannelInstance') -> bool:
        if self.M != other.M:
            return False
        return all((a.h11, a.h12, a.h21, a.h22) == (b.h11, b.h12, b.h21, b.h22)
                   for a, b in zip(self.subchannels, other.subchannels))


def half_log2(x):
    """``0.5 * log2(1 + x)``, accurate for small ``x``."""
    return 0.5 * np.log1p(x) / math.log(2.0)


def rate_arrays(h11, h12, h21, h22, p1, p2) -> dict[str, np.ndarray]:
    """Rate quantities ``a`` to ``j`` for broadcastable parameter arrays."""
    g11, g12 = np.square(h11) * p1, np.square(h12) * p1
    g21, g22 = np.square(h21) * p2, np.square(h22) * p2
    return {
        'a': half_log2(g11),
        'b': half_log2(g12),
        'c': half_log2(g21),
        'd': half_log2(g22),
        'e': half_log2(g11 + g21),
        'f': half_log2(g12 + g22),
        'g': half_log2(g11 / (1.0 + g21)),
        'h': half_log2(g22 / (1.0 + g12)),
        'i': half_log2(g21 + g11 / (1.0 + g12)),
        'j': half_log2(g12 + g22 / (1.0 + g21)),
    }


@dataclass(frozen=True)
class RateQuantities:
    """Per-sub-channel rates in bits per channel use.

    Each field is a length-M array.  ``a``/``d`` are the interference-free
    rates of users 1/2, ``b``/``c`` the cross-link rates, ``e``/``f`` the
    sum rates seen at receivers 1/2, ``g``/``h`` the treat-interference-as-
    noise rates and ``i``/``j`` the terms of the independent-coding outer
    bound.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray
    h: np.ndarray
    i: np.ndarray
    j: np.ndarray

    FIELDS = ('a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j')

    @property
    def M(self) -> int:
        return len(self.a)

    def swapped(self) -> 'RateQuantities':
        """Quantities of the user-relabelled channel."""
        return RateQuantities(a=self.d, b=self.c, c=self.b, d=self.a, e=self.f,
                              f=self.e, g=self.h, h=self.g, i=self.j, j=self.i)

    def row(self, m: int) -> dict[str, float]:
        return {k: float(getattr(self, k)[m]) for k in self.FIELDS}

    def rows(self) -> list[dict[str, float]]:
        return [self.row(m) for m in range(self.M)]


def rate_quantities(ch: ChannelInstance) -> RateQuantities:
    """Evaluate the ten per-sub-channel rate quantities of ``ch``."""
    values = rate_arrays(*ch.arrays())
    for v in values.values():
        v.setflags(write=False)
    return RateQuantities(**values)


@dataclass(frozen=True)
class SubchannelFlags:
    strong: bool
    mixedA: bool
    mixedB: bool
    weak: bool
    noisy: bool

    def names(self) -> list[str]:
        return [n for n in ('strong', 'mixedA', 'mixedB', 'weak', 'noisy') if getattr(self, n)]


@dataclass(frozen=True)
class ChannelClass:
    """Interference classification of a channel.

    ``aggregate`` is the preferred class among ``valid_aggregates``
    (Strong > MixedA > MixedB > Noisy > Weak), or ``'Unclassified'`` when
    the sub-channels disagree.
    """

    per_subchannel: tuple[SubchannelFlags, ...]
    aggregate: str
    valid_aggregates: tuple[str, ...] = field(default=())

    def allows(self, name: str) -> bool:
        return name in self.valid_aggregates


def subchannel_flags(sub: Subchannel) -> SubchannelFlags:
    a11, a12, a21, a22 = abs(sub.h11), abs(sub.h12), abs(sub.h21), abs(sub.h22)
    up1 = leq(a11, a12)  # |h12| >= |h11|
    dn1 = leq(a12, a11)
    up2 = leq(a22, a21)  # |h21| >= |h22|
    dn2 = leq(a21, a22)
    noisy = leq(sub.cross_ratio_2 + sub.cross_ratio_1, 1.0)
    return SubchannelFlags(strong=up1 and up2, mixedA=up1 and dn2,
                           mixedB=dn1 and up2, weak=dn1 and dn2,
                           noisy=noisy and dn1 and dn2)


def classify(ch: ChannelInstance) -> ChannelClass:
    """Classify each sub-channel and the channel as a whole."""
    flags = tuple(subchannel_flags(s) for s in ch)
    valid = []
    for name, attr in ((STRONG, 'strong'), (MIXED_A, 'mixedA'), (MIXED_B, 'mixedB'),
                       (NOISY, 'noisy'), (WEAK, 'weak')):
        if all(getattr(f, attr) for f in flags):
            valid.append(name)
    aggregate = valid[0] if valid else UNCLASSIFIED
    return ChannelClass(flags, aggregate, tuple(valid))


def scale_powers(ch: ChannelInstance, factor: float) -> ChannelInstance:
    """Multiply every power limit by ``factor``; gains are unchanged."""
    factor = float(factor)
    if not math.isfinite(factor) or factor < 0:
        raise ValueError(f'factor must be finite and >= 0, got {factor!r}')
    return ChannelInstance(tuple(s.with_powers(s.p1 * factor, s.p2 * factor) for s in ch))
