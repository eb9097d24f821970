# %% [markdown]
# # Kneading: from a parameter to its angle and back
#
# For real c the signs of the critical orbit determine the binary digits
# of the angle tau(c).  Bisection on tau recovers c from an angle.

# %%
from fractions import Fraction as F

from mandelangles.angle import word_value
from mandelangles.kneading import itinerary, nonrecurrence_depth, pi, tau

print(itinerary(-2, 5))
print(tau(-2, 12), tau(0.25, 12))

# %% [markdown]
# Near the Feigenbaum point the angle is the Thue-Morse number.

# %%
w = tau("-1.401155", 24)
print(w, float(word_value(w)))

# %% [markdown]
# tau decreases with c.

# %%
for c in (-1.99, -1.9, -1.8, -1.75, -1.6, -1.5):
    print(c, float(word_value(tau(c, 48))))

# %% [markdown]
# The inverse map.  At a parabolic angle the bisection settles on the
# root of the component.

# %%
for t in (F(1, 3), F(2, 5), F(3, 7), F(15, 31), F(5, 12)):
    c = pi(t)
    print(t, c, float(word_value(tau(c, 40)) - t))

# %% [markdown]
# Closest approach of the critical orbit to 0.

# %%
print(nonrecurrence_depth(-2, 100), nonrecurrence_depth(pi(F(19, 40)), 200))
