# %% [markdown]
# # Biaccessible angles and the bound ell
#
# For real c the biaccessible angles are the ones whose doubling orbit
# avoids ]tau(c), 1 - tau(c)[, which is the set K_sigma with
# sigma = 1 - 2 tau(c).

# %%
from fractions import Fraction as F

from mandelangles.biaccess import (
    basilica_catalogue,
    dim_report,
    ell,
    makarov_lower,
    reports_csv,
    rho,
    s_c_membership,
)
from mandelangles.realslice import enumerate_openings

# %% [markdown]
# For the basilica (tau = 1/3) only a countable family survives.

# %%
cat = basilica_catalogue(4)
print([str(t) for t in cat])
print(all(s_c_membership(t, F(1, 3)) for t in cat), s_c_membership(F(5, 24), F(1, 3)))

# %% [markdown]
# The lower bound ell as a function of rho, and the derived bound through
# makarov_lower.

# %%
for r in (F(4, 9), 0.45, 0.47, 0.49, F(1, 2)):
    e = ell(r)
    print(float(r), round(e, 4), round(makarov_lower(e), 4))

# %% [markdown]
# rho replaces tau by the Feigenbaum angle tuned into the component a
# parameter belongs to.

# %%
ops = enumerate_openings(10)
for c in (-2, -1.9, -1.75, 0):
    print(c, float(rho(c, ops)))

# %% [markdown]
# A sweep of the full report.

# %%
print(reports_csv([dim_report(c, ops) for c in (-2, -1.95, -1.9, -1.85, -1.8, -1.75, -1.6, 0.1)]))
