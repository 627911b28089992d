"""Separability tests for parallel interference channels.

A channel is *separable* when coding each sub-channel on its own loses
nothing in sum rate compared with coding across sub-channels.  For strong
and mixed channels this happens exactly when every sub-channel falls into
the same family of a small set partition defined by inequalities on the
gains and powers.  These functions evaluate the partition directly and,
independently, through the rate quantities, so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .capacity import (CAP_TOL, sum_capacity_mixed_independent, sum_capacity_mixed_joint,
                       sum_capacity_strong_independent, sum_capacity_strong_joint)
from .channel import (MIXED_A, MIXED_B, NOISY, STRONG, ChannelClassError, ChannelInstance,
                      Subchannel, classify, leq, rate_quantities, subchannel_flags)

__all__ = [
    'SEPARABLE',
    'INSEPARABLE',
    'UNKNOWN',
    'STRONG_FAMILIES',
    'MIXED_FAMILIES',
    'SubchannelMembership',
    'SeparabilityVerdict',
    'strong_membership',
    'mixed_membership',
    'noisy_membership',
    'remark2_unknown',
    'separable_strong',
    'separable_mixed',
    'analyze',
    'rate_form_verdict',
    'cross_check_forms',
]

SEPARABLE = 'Separable'
INSEPARABLE = 'Inseparable'
UNKNOWN = 'Unknown'

STRONG_FAMILIES = ('S1', 'S2', 'S3')
MIXED_FAMILIES = ('M1', 'M2')


@dataclass(frozen=True)
class SubchannelMembership:
    """Set memberships of one sub-channel.

    Families that do not apply to the sub-channel's class are ``None``.
    ``families`` lists the families the sub-channel is compatible with
    when the verdict is formed; it equals the set membership except for
    sub-channels with a zero power, where the sets are undefined and the
    rate ties decide.
    """

    in_S1: Optional[bool] = None
    in_S2: Optional[bool] = None
    in_S3: Optional[bool] = None
    in_M1: Optional[bool] = None
    in_M2: Optional[bool] = None
    in_N: bool = False
    in_remark2_unknown: bool = False
    families: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {'in_S1': self.in_S1, 'in_S2': self.in_S2, 'in_S3': self.in_S3,
                'in_M1': self.in_M1, 'in_M2': self.in_M2, 'in_N': self.in_N,
                'in_remark2_unknown': self.in_remark2_unknown,
                'families': list(self.families)}


@dataclass(frozen=True)
class SeparabilityVerdict:
    verdict: str
    family: Optional[str]
    memberships: tuple[SubchannelMembership, ...]
    gap: Optional[float] = None
    channel_class: str = ''
    notes: tuple[str, ...] = field(default=())

    @property
    def separable(self) -> bool:
        return self.verdict == SEPARABLE


def noisy_membership(sub: Subchannel) -> bool:
    """True when the two cross ratios add up to at most one."""
    return leq(sub.cross_ratio_2 + sub.cross_ratio_1, 1.0)


def remark2_unknown(sub: Subchannel) -> bool:
    """Weak but not noisy: the regime where the sum capacity is open."""
    r2, r1 = sub.cross_ratio_2, sub.cross_ratio_1
    return (not leq(r2 + r1, 1.0)) and leq(r2, 1.0) and leq(r1, 1.0)


def _strong_rate_families(sub: Subchannel) -> tuple[str, ...]:
    q = rate_quantities(ChannelInstance((sub,))).row(0)
    ad, e, f = q['a'] + q['d'], q['e'], q['f']
    low = min(ad, e, f)
    return tuple(name for name, v in zip(STRONG_FAMILIES, (ad, e, f)) if v <= low + CAP_TOL)


def strong_membership(sub: Subchannel) -> SubchannelMembership:
    """Evaluate the three strong-channel families on one sub-channel.

    The second inequality of the S2/S3 families divides by the user-1
    power; it is evaluated multiplied through, which is the same
    comparison for positive power and stays defined at zero power.
    """
    flags = subchannel_flags(sub)
    if not flags.strong:
        raise ChannelClassError('sub-channel is not strong', classify(ChannelInstance((sub,))))
    x1 = sub.h11 ** 2 * sub.p1
    x2 = sub.h22 ** 2 * sub.p2
    r21 = sub.h21 ** 2 / sub.h22 ** 2
    r12 = sub.h12 ** 2 / sub.h11 ** 2
    c1 = leq(1.0 + x1, r21)
    c2 = leq(1.0 + x2, r12)
    # h11^2 P1 + h21^2 P2 <= h12^2 P1 + h22^2 P2
    e_le_f = leq(x1 + sub.h21 ** 2 * sub.p2, sub.h12 ** 2 * sub.p1 + x2)
    in_s1 = c1 and c2
    in_s2 = (not c1) and leq(1.0, r21) and e_le_f
    in_s3 = (not c2) and leq(1.0, r12) and not e_le_f
    members = tuple(n for n, v in zip(STRONG_FAMILIES, (in_s1, in_s2, in_s3)) if v)
    if sub.p1 == 0.0 or sub.p2 == 0.0 or not members:
        members = _strong_rate_families(sub)
    return SubchannelMembership(in_S1=in_s1, in_S2=in_s2, in_S3=in_s3,
                                in_N=noisy_membership(sub),
                                in_remark2_unknown=remark2_unknown(sub),
                                families=members)


def mixed_membership(sub: Subchannel) -> SubchannelMembership:
    """Evaluate the two mixed-channel families (MixedA orientation)."""
    flags = subchannel_flags(sub)
    if not flags.mixedA:
        raise ChannelClassError('sub-channel is not MixedA', classify(ChannelInstance((sub,))))
    r12 = sub.h12 ** 2 / sub.h11 ** 2
    threshold = (1.0 + sub.h22 ** 2 * sub.p2) / (1.0 + sub.h21 ** 2 * sub.p2)
    in_m1 = leq(r12, threshold)
    members = ('M1',) if in_m1 else ('M2',)
    if sub.p1 == 0.0:
        # F = D + G exactly; either family is consistent
        members = MIXED_FAMILIES
    return SubchannelMembership(in_M1=in_m1, in_M2=not in_m1,
                                in_N=noisy_membership(sub),
                                in_remark2_unknown=remark2_unknown(sub),
                                families=members)


def _common_family(memberships, order) -> Optional[str]:
    for name in order:
        if all(name in m.families for m in memberships):
            return name
    return None


def separable_strong(ch: ChannelInstance) -> SeparabilityVerdict:
    cls = classify(ch)
    if not cls.allows(STRONG):
        raise ChannelClassError(f'channel class is {cls.aggregate}, expected Strong', cls)
    memberships = tuple(strong_membership(s) for s in ch)
    family = _common_family(memberships, STRONG_FAMILIES)
    joint, indep = _capacities(ch, STRONG)
    return SeparabilityVerdict(SEPARABLE if family else INSEPARABLE, family, memberships,
                               joint - indep, STRONG)


def separable_mixed(ch: ChannelInstance) -> SeparabilityVerdict:
    cls = classify(ch)
    notes = ()
    if cls.allows(MIXED_A):
        name, oriented = MIXED_A, ch
    elif cls.allows(MIXED_B):
        name, oriented = MIXED_B, ch.swapped()
        notes = ('evaluated with users relabelled (MixedB -> MixedA)',)
    else:
        raise ChannelClassError(f'channel class is {cls.aggregate}, expected MixedA or MixedB', cls)
    memberships = tuple(mixed_membership(s) for s in oriented)
    family = _common_family(memberships, MIXED_FAMILIES)
    joint, indep = _capacities(ch, name)
    return SeparabilityVerdict(SEPARABLE if family else INSEPARABLE, family, memberships,
                               joint - indep, name, notes)


def _capacities(ch: ChannelInstance, name: str) -> tuple[float, float]:
    if name == STRONG:
        return sum_capacity_strong_joint(ch), sum_capacity_strong_independent(ch)
    return sum_capacity_mixed_joint(ch), sum_capacity_mixed_independent(ch)


def analyze(ch: ChannelInstance) -> SeparabilityVerdict:
    """Separability verdict for a channel of any class.

    Strong and mixed channels get an exact verdict.  Noisy channels are
    reported separable (the result holds under a power condition that is
    not checked here).  Everything else is ``Unknown``.
    """
    cls = classify(ch)
    if cls.allows(STRONG):
        return separable_strong(ch)
    if cls.allows(MIXED_A) or cls.allows(MIXED_B):
        return separable_mixed(ch)
    memberships = tuple(SubchannelMembership(in_N=noisy_membership(s),
                                             in_remark2_unknown=remark2_unknown(s))
                        for s in ch)
    if cls.allows(NOISY):
        return SeparabilityVerdict(SEPARABLE, 'Noisy', memberships, None, NOISY,
                                   ('conditional on an unverified power condition',))
    notes = ()
    if all(m.in_remark2_unknown for m in memberships):
        notes = ('weak, non-noisy: sum capacity unknown',)
    return SeparabilityVerdict(UNKNOWN, None, memberships, None, cls.aggregate, notes)


def rate_form_verdict(ch: ChannelInstance) -> tuple[str, Optional[str]]:
    """Verdict from the rate-quantity form of the equality conditions."""
    cls = classify(ch)
    if cls.allows(STRONG):
        q = rate_quantities(ch)
        ad = q.a + q.d
        conds = {
            'S1': ad <= np.minimum(q.e, q.f) + CAP_TOL,
            'S2': q.e <= np.minimum(ad, q.f) + CAP_TOL,
            'S3': q.f <= np.minimum(ad, q.e) + CAP_TOL,
        }
    elif cls.allows(MIXED_A) or cls.allows(MIXED_B):
        q = rate_quantities(ch if cls.allows(MIXED_A) else ch.swapped())
        conds = {'M1': q.f <= q.d + q.g + CAP_TOL, 'M2': q.f > q.d + q.g - CAP_TOL}
    else:
        raise ChannelClassError(f'channel class is {cls.aggregate}, expected Strong or Mixed', cls)
    for name, holds in conds.items():
        if np.all(holds):
            return SEPARABLE, name
    return INSEPARABLE, None


def cross_check_forms(ch: ChannelInstance) -> bool:
    """True when the set-membership and rate forms give the same verdict."""
    cls = classify(ch)
    if cls.allows(STRONG):
        by_sets = separable_strong(ch)
    elif cls.allows(MIXED_A) or cls.allows(MIXED_B):
        by_sets = separable_mixed(ch)
    else:
        raise ChannelClassError(f'channel class is {cls.aggregate}, expected Strong or Mixed', cls)
    return by_sets.verdict == rate_form_verdict(ch)[0]
