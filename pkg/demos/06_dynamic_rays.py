# %% [markdown]
# # Dynamic rays by inverse iteration
#
# Far from the Julia set the ray of angle s is close to the radial line
# at angle s.  Pulling back along the doubling orbit of t traces the ray
# of angle t down towards where it lands.

# %%
from fractions import Fraction as F
from pathlib import Path

import mpmath

from mandelangles import figures
from mandelangles.kneading import pi
from mandelangles.raytrace import parabolic_root, residual_sequence, trace_ray, verify_landing

ray = trace_ray(-2, F(1, 2), 40)
print(ray.endpoint, ray.max_pullback_error())

# %% [markdown]
# The ray at tau(c) lands on the critical value for c = -2 and at the
# Misiurewicz parameter with angle 5/12.

# %%
print(verify_landing(-2, depth=40))
c = pi(F(5, 12))
print(c, verify_landing(c, depth=40, t=F(5, 12)))

# %% [markdown]
# At parabolic parameters the convergence is slow.

# %%
root = parabolic_root(-0.75, 1)
print(residual_sequence(-0.75, F(1, 3), [10, 20, 40, 80], root=root))

# %% [markdown]
# Real parameters give conjugate-symmetric rays.

# %%
a, b = trace_ray(-1.75, F(3, 7), 30), trace_ray(-1.75, F(4, 7), 30)
print(max(abs(z - mpmath.conj(w)) for z, w in zip(a.points, b.points)))

# %% [markdown]
# Write the figures next to this script.

# %%
out = Path(__file__).with_name("figures_out")
out.mkdir(exist_ok=True)
(out / "openings_circle.svg").write_text(figures.openings_circle())
(out / "ksigma_hierarchy.svg").write_text(figures.ksigma_hierarchy())
(out / "ray_overlay.svg").write_text(figures.ray_overlay())
(out / "julia_backdrop.ppm").write_bytes(figures.escape_time_ppm(-1.75))
print(sorted(p.name for p in out.iterdir()))
