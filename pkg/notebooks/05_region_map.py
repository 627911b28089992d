# coding: utf-8
# %% [markdown]
# # Separability map over the cross-gain ratios
#
# Each grid point fixes |h12|/|h11| (x) and |h21|/|h22| (y) with unit direct
# gains and unit powers. The map below prints one character per point.

# %%
from pgic import Subchannel
from pgic.explore import SweepSpec, sweep_plane

spec = SweepSpec(Subchannel(1, 1, 1, 1, 1, 1), x=(0.1, 3.0, 0.1), y=(0.1, 3.0, 0.1))
rows = sweep_plane(spec)

symbol = {'S1': '1', 'S2': '2', 'S3': '3', 'M1': 'a', 'M2': 'b', 'Noisy': 'n',
          'Unknown': '.', 'Inseparable': 'x'}
nx = len({r.x_ratio for r in rows})
ny = len(rows) // nx
grid = [[symbol[r.family or r.verdict] for r in rows[i * ny:(i + 1) * ny]] for i in range(nx)]

# %% [markdown]
# Rows are y from top (large) to bottom (small), columns are x left to right.

# %%
for j in reversed(range(ny)):
    print(''.join(grid[i][j] for i in range(nx)))

# %%
from collections import Counter
print(Counter(r.family or r.verdict for r in rows))
