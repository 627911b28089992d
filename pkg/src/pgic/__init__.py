"""Sum capacity and separability analysis of parallel Gaussian
interference channels."""

__version__ = '0.1.0'

from .channel import (ChannelClass, ChannelClassError, ChannelInstance, RateQuantities,
                      Subchannel, classify, rate_quantities, scale_powers)
from .capacity import (midpoint_concavity_check, region_bound_values, strong_region_polygon,
                       sum_capacities, sum_capacity_mixed_independent, sum_capacity_mixed_joint,
                       sum_capacity_strong_independent, sum_capacity_strong_joint, tin_sum_rate,
                       check_condition_21)
from .separability import (SeparabilityVerdict, analyze, cross_check_forms, separable_mixed,
                           separable_strong)
from .bounds import (BoundsReport, Certificate, SplitParams, inner_bound_value,
                     inseparability_certificate, optimize_inner_bound, outer_bound_independent)

__all__ = [
    'ChannelClass', 'ChannelClassError', 'ChannelInstance', 'RateQuantities', 'Subchannel',
    'classify', 'rate_quantities', 'scale_powers',
    'midpoint_concavity_check', 'region_bound_values', 'strong_region_polygon',
    'sum_capacities', 'sum_capacity_mixed_independent', 'sum_capacity_mixed_joint',
    'sum_capacity_strong_independent', 'sum_capacity_strong_joint', 'tin_sum_rate',
    'check_condition_21',
    'SeparabilityVerdict', 'analyze', 'cross_check_forms', 'separable_mixed',
    'separable_strong',
    'BoundsReport', 'Certificate', 'SplitParams', 'inner_bound_value',
    'inseparability_certificate', 'optimize_inner_bound', 'outer_bound_independent',
]
