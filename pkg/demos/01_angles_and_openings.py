# %% [markdown]
# # Angles on the circle and the real slice
#
# Angles are exact rationals mod 1.  Doubling is the basic dynamics, and
# the set R of angles whose orbit stays out of ]t, 1 - t[ is carved out of
# [0, 1/2] by countably many open intervals, one per real hyperbolic
# component.

# %%
from fractions import Fraction as F

from mandelangles.angle import binary_expansion, double, orbit_cycle
from mandelangles.intervals import boxcount_dimension
from mandelangles.realslice import cover_R, enumerate_openings, in_R, openings_length_sum

print(double(F(5, 6)))
print(orbit_cycle(F(1, 4)))  # preperiod 2, period 1
print(binary_expansion(F(15, 31), 10))

# %% [markdown]
# Membership in R is an exact orbit test for rationals.

# %%
for t in (F(15, 31), F(3, 8), F(1, 3), F(2, 5)):
    print(t, in_R(t))

# %% [markdown]
# The openings up to period 5.  Each one is ]n/(2^p - 1), (n+1)/(2^p + 1)[.

# %%
for o in enumerate_openings(5):
    print(o.period, o.theta_minus, o.omega_minus, o.length)

# %% [markdown]
# Their lengths add up towards 1/2: what is left over is the measure of the
# closed cover of R, which shrinks as the period bound grows.

# %%
for P in (1, 2, 3, 6, 10, 14):
    s = openings_length_sum(P)
    print(P, float(s), float(F(1, 2) - s))

# %% [markdown]
# A box count of the cover.  The slope creeps up towards 1 as finer
# scales are resolved.

# %%
counts, slope = boxcount_dimension(cover_R(12), range(6, 15))
print(counts)
print(round(slope, 4))
