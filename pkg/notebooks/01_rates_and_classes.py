# coding: utf-8
# %% [markdown]
# # Rates and interference classes
#
# A parallel interference channel is a list of scalar sub-channels. Each one
# has four gains (transmitter k to receiver l) and two power limits. This
# script builds a few channels, prints their per-sub-channel rates and
# classifies them.

# %%
import numpy as np

from pgic import ChannelInstance, classify, rate_quantities

# %% [markdown]
# Rows are `(h11, h12, h21, h22, p1, p2)`. The first channel has cross gains
# larger than the direct gains on both links.

# %%
strong = ChannelInstance.from_rows([(1, 2, 2, 1, 1, 1)])
q = rate_quantities(strong)
for k, v in q.row(0).items():
    print(f'{k} = {v:.6f}')

# %% [markdown]
# With both cross gains at 0.4 the channel is weak, and since
# 0.4 + 0.4 <= 1 it also falls in the noisy sub-regime.

# %%
for rows in ([(1, 2, 2, 1, 1, 1)], [(1, 2, 0.5, 1, 1, 1)], [(1, 0.5, 2, 1, 1, 1)],
             [(1, 0.4, 0.4, 1, 1, 1)], [(1, 0.7, 0.7, 1, 1, 1)],
             [(1, 2, 2, 1, 1, 1), (1, 0.4, 0.4, 1, 1, 1)]):
    cls = classify(ChannelInstance.from_rows(rows))
    print(f'{str(rows):60s} {cls.aggregate:13s} valid={cls.valid_aggregates}')

# %% [markdown]
# Rates are half log2 terms computed with `log1p`, so they stay accurate at
# very small powers.

# %%
tiny = ChannelInstance.from_rows([(1, 2, 2, 1, 1e-12, 1e-12)])
print(rate_quantities(tiny).a, 0.5 * 1e-12 / np.log(2))
