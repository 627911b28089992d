# coding: utf-8
# %% [markdown]
# # Strong capacity region and the covariance checks
#
# The strong-interference region with diagonal inputs is a polygon cut out by
# two single-user bounds and two sum bounds. Full covariance matrices can only
# shrink those bounds; this script checks that on random draws.

# %%
import numpy as np

from pgic import ChannelInstance, check_condition_21
from pgic.capacity import region_bound_values, strong_region_polygon

ch = ChannelInstance.from_rows([(1, 3, 1.1, 1, 1, 1), (1, 1.1, 3, 1, 1, 1)])
poly = strong_region_polygon(ch)
for r1, r2 in poly.vertices:
    print(f'({r1:.6f}, {r2:.6f})')
print('max sum rate', poly.max_sum_rate)

# %% [markdown]
# Random PSD inputs with the power limits on the diagonal. The diagonal choice
# should dominate every bound.

# %%
rng = np.random.default_rng(0)


def random_cov(p):
    A = rng.standard_normal((len(p), len(p) + 1))
    S = A @ A.T
    d = np.sqrt(np.diag(S))
    S = S / np.outer(d, d) * np.sqrt(np.outer(p, p))
    np.fill_diagonal(S, p)
    return S


p1, p2 = ch.column('p1'), ch.column('p2')
diag = np.array(region_bound_values(ch, np.diag(p1), np.diag(p2)))
excess = max(np.max(np.array(region_bound_values(ch, random_cov(p1), random_cov(p2))) - diag)
             for _ in range(200))
print('largest excess over the diagonal bounds:', excess)

# %% [markdown]
# The determinant inequality used for mixed channels, checked on a random
# covariance. Both sides are returned.

# %%
mixed = ChannelInstance.from_rows([(1, 2, 0.5, 1, 1, 2), (1, 1.5, 0.8, 1, 3, 1)])
r = check_condition_21(mixed, random_cov(mixed.column('p2')))
print(r.holds, r.lhs, r.rhs)
