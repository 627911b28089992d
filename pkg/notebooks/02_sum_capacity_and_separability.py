# coding: utf-8
# %% [markdown]
# # Sum capacity and separability
#
# For strong and mixed channels the sum capacity is known in closed form,
# both for one code spanning every sub-channel (joint coding) and for a
# separate code per sub-channel (independent coding). The channel is
# separable when the two agree.

# %%
from pgic import ChannelInstance, analyze, sum_capacities, tin_sum_rate

examples = {
    'single strong': [(1, 2, 2, 1, 1, 1)],
    'two strong': [(1, 3, 1.1, 1, 1, 1), (1, 1.1, 3, 1, 1, 1)],
    'mixed': [(1, 2, 0.5, 1, 1, 1)],
    'two mixed': [(1, 1.1, 0.5, 1, 1, 1), (1, 2, 0.5, 1, 1, 1)],
}

# %%
for name, rows in examples.items():
    ch = ChannelInstance.from_rows(rows)
    cls, joint, indep = sum_capacities(ch)
    print(f'{name:14s} {cls:8s} joint={joint:.6f} independent={indep:.6f} '
          f'gap={joint - indep:.6f} tin={tin_sum_rate(ch):.6f}')

# %% [markdown]
# `analyze` answers the same question from the set conditions on each
# sub-channel and names the family they share, if any.

# %%
for name, rows in examples.items():
    v = analyze(ChannelInstance.from_rows(rows))
    fams = [m.families for m in v.memberships]
    print(f'{name:14s} {v.verdict:12s} family={v.family} per sub-channel={fams}')

# %% [markdown]
# Noisy channels are reported as separable, but that verdict rests on a power
# condition this package does not check. Weak channels outside the noisy
# regime get the verdict Unknown.

# %%
for rows in ([(1, 0.4, 0.4, 1, 1, 1)], [(1, 0.7, 0.7, 1, 1, 1)]):
    v = analyze(ChannelInstance.from_rows(rows))
    print(v.verdict, v.family, v.notes)
