# coding: utf-8
# %% [markdown]
# # Low-power behaviour
#
# As every power shrinks, joint and independent coding reach the same sum
# capacity on strong and mixed channels. The ratio tends to 1 but does not
# have to get there monotonically.

# %%
from pgic import ChannelInstance
from pgic.explore import asymptotic_ratio

for rows in ([(1, 3, 1.1, 1, 1, 1), (1, 1.1, 3, 1, 1, 1)],
             [(1, 1.1, 0.5, 1, 1, 1), (1, 2, 0.5, 1, 1, 1)]):
    s = asymptotic_ratio(ChannelInstance.from_rows(rows), [1, 1e-1, 1e-2, 1e-3, 1e-4])
    print(s.channel_class, [f'{p.ratio:.6f}' for p in s.points])

# %% [markdown]
# Here the two sub-channels switch mixed family at different power scales.
# Both sit in the same family at 0.1 and again below 1e-3, but not at 1e-2.

# %%
ch = ChannelInstance.from_rows([
    (-1.6624776862104143, 1.7488385399207507, 0.42817233953883505, -1.315012541709279,
     1.1013670748376707, 3.8251127662677256),
    (0.8872050257324143, -0.8876298773332872, 0.22609670645814672, 0.6774354132095868,
     0.977759469187378, 2.8171543967282116)])
for p in asymptotic_ratio(ch).points:
    print(f'{p.scale:8.0e} {p.ratio:.9f}')
