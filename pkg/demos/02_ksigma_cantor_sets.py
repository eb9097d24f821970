# %% [markdown]
# # Cantor sets that avoid dyadic rationals
#
# K_sigma keeps the angles that stay at distance at least sigma 2^-k from
# every dyadic rational of generation k.  Each level is a finite union of
# closed intervals, built exactly on an integer grid.

# %%
from fractions import Fraction as F

import numpy as np

from mandelangles.ksigma import (
    SigmaParam,
    boxdim_estimate,
    build_level,
    dim_lower_bound,
    interval_counts,
    mass_distribution,
    membership,
    membership_runlength,
    porosity_witness,
    verify_structure,
)

sp = SigmaParam(F(1, 4))
print(build_level(sp, 2).set)

# %% [markdown]
# Interval counts per level and the growth slope, next to the proven lower
# bound for the dimension.

# %%
for p in (3, 4, 5, 6):
    sp = SigmaParam.dyadic(p)
    levels = range(8, 19)
    print(p, interval_counts(sp, [8, 18]), round(boxdim_estimate(sp, levels), 4),
          round(dim_lower_bound(sp), 4))

# %% [markdown]
# The structural clauses are checked with integer arithmetic on every
# interval of every level.

# %%
report = verify_structure(SigmaParam.dyadic(3), 10)
print(all(r["pass"] for r in report), len(report))
print([r for r in report if r["clause"] == "v-case1"])

# %% [markdown]
# The mass distribution spreads probability over the intervals; its
# density against length stays bounded after rescaling by lambda^n.

# %%
sp = SigmaParam.dyadic(4)
lam = float(sp.lam)
for n in (4, 8, 12):
    level, w = mass_distribution(sp, n)
    lengths = np.array([float(b - a) for a, b in level.set])
    print(n, len(w), float(max(np.array([float(x) for x in w]) / (lam ** n * lengths))))

# %% [markdown]
# Membership for sigma = 2^-p reduces to a statement about runs of equal
# binary digits.

# %%
for w in ("0101010101", "0111010101", "00111001"):
    print(w, membership_runlength(w, 3), membership(w, SigmaParam.dyadic(3), len(w) - 3))

# %% [markdown]
# Porosity: every interval contains a hole of proportional size.

# %%
print(porosity_witness(SigmaParam(F(1, 4)), (F(0), F(1))))
