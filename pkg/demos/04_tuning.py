# %% [markdown]
# # Tuning acts on binary digits
#
# A real component of period p replaces every digit by a p-digit block.
# The image of the circle is a Cantor set of dimension 1/p; its gaps are
# labelled by dyadic rationals, which the staircase psi recovers.

# %%
from fractions import Fraction as F

from mandelangles.realslice import Opening
from mandelangles.tuning import (
    cantor_boxdim,
    holder_constant,
    staircase_psi,
    tune_angle,
    tuned_cover_slope,
    words_from_opening,
)

basilica = words_from_opening(Opening.from_pn(2, 1))
print(basilica)
print(tune_angle(basilica, F(1, 3)))
print(tune_angle(basilica, F(1, 2)))  # a dyadic angle has two images

# %% [markdown]
# psi undoes the substitution and is constant across each gap.

# %%
print(staircase_psi(basilica, F(2, 5)))
print(staircase_psi(basilica, F(1, 2)))

# %% [markdown]
# Box-counting slopes of the tuning Cantor sets.

# %%
for p, n in ((2, 1), (3, 3), (5, 15)):
    w = words_from_opening(Opening.from_pn(p, n))
    scales, counts, slope = cantor_boxdim(w, 12 * p)
    print(p, round(slope, 4))

# %% [markdown]
# The image of the cover of R under basilica tuning.

# %%
counts, slope = tuned_cover_slope(basilica, 8)
print(counts, round(slope, 4))
print(round(holder_constant(basilica, n_pairs=2000), 3))
