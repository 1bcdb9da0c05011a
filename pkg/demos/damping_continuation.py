"""Follow the interface mode into the lossy regime and map the root regions.

Two views of robustness under damping: the continuation path of the root
omega(delta) through the complex plane, and the raster comparison of the
impedance at two nearby damping values, whose agreement region must admit a
closed curve around both roots for the perturbation argument to bite.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from interfacemodes import (
    GapWindow,
    common_gap_window,
    continuation,
    find_enclosing_contour,
    rouche_map,
)
from interfacemodes.medium import medium_from_dict

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

medium = medium_from_dict(
    {
        "mu0": 1.0,
        "delta": 0.0,
        "cell_A": {
            "layers": [
                {"eps_re": 1.0, "eps_im_coeff": 1.0, "width": 0.25},
                {"eps_re": 4.0, "eps_im_coeff": 1.0, "width": 0.5},
                {"eps_re": 1.0, "eps_im_coeff": 1.0, "width": 0.25},
            ]
        },
        "cell_B": {
            "layers": [
                {"eps_re": 4.0, "eps_im_coeff": 1.0, "width": 0.25},
                {"eps_re": 1.0, "eps_im_coeff": 1.0, "width": 0.5},
                {"eps_re": 4.0, "eps_im_coeff": 1.0, "width": 0.25},
            ]
        },
    }
)

# 1. continuation trace: the root leaves the real axis tangentially and
# sinks into the lower half-plane as the damping grows.
attempts: list = []
path = continuation(medium.with_delta, 0.5, initial_step=0.05, attempts=attempts)
omegas = np.array([r.omega for r in path])
deltas = np.array([r.delta for r in path])
print(f"continuation: {len(path)} certified roots from delta = 0 to {deltas[-1]:g}")

fig, ax = plt.subplots(figsize=(6.0, 4.2))
ax.plot(omegas.real, omegas.imag, "-o", ms=4, color="C0")
for r in path[:: max(1, len(path) // 6)]:
    ax.annotate(f"{r.delta:g}", (r.omega.real, r.omega.imag), textcoords="offset points", xytext=(6, 4), fontsize=8)
ax.axhline(0.0, color="0.6", lw=0.8)
ax.set_xlabel(r"Re $\omega$")
ax.set_ylabel(r"Im $\omega$")
ax.set_title(r"Interface-mode root vs damping $\delta$")
fig.tight_layout()
fig.savefig(OUT / "continuation_path.png", dpi=150)
print(f"wrote {OUT / 'continuation_path.png'}")

# 2. region map between delta = 0.5 and a slightly stronger damping.  Dark
# cells are where the perturbation between the two impedances is dominated;
# the complementary region containing the roots is typically thinner than a
# raster cell, so the two roots carry their own exact-point classification,
# and the solver finds one circle through the dominated region around both.
d1, d2 = 0.5, 0.50005
gap = (1.682137, 2.461919)
pad = 0.02 * (gap[1] - gap[0])
seed = (gap[0] + pad, gap[1] - pad)
wins = [common_gap_window(medium.cell_A, medium.cell_B, medium.mu0, d, seed, 0.25) for d in (d1, d2)]
window = GapWindow(
    re_min=wins[0].re_min,
    re_max=wins[0].re_max,
    im_min=wins[0].im_min,
    im_max=wins[0].im_max,
    margin=min(w.margin for w in wins),
    sample_density=wins[0].sample_density,
    delta=d2,
)
rmap = rouche_map(medium.with_delta(d1), medium.with_delta(d2), window, resolution=300)
circle = find_enclosing_contour(rmap)
n_c = int(np.sum(rmap.region == "c"))
print(f"raster: {n_c}/{rmap.region.size} dominated cells; roots {rmap.omega_1:.9f} and {rmap.omega_2:.9f}")
print(f"root classifications: {rmap.root_1.region!r} and {rmap.root_2.region!r} (exact points, outside the dominated set)")
print(f"enclosing circle: center {circle.center:.9f}, radius {circle.radius:.3e}")

fig, ax = plt.subplots(figsize=(6.8, 4.2))
mask = (rmap.region == "c").astype(float)
ax.imshow(
    mask,
    origin="lower",
    extent=(window.re_min, window.re_max, window.im_min, window.im_max),
    aspect="auto",
    cmap="Greys",
    vmin=-0.2,
    vmax=1.4,
)
theta = np.linspace(0.0, 2.0 * np.pi, 200)
ax.plot(circle.center.real + circle.radius * np.cos(theta), circle.center.imag + circle.radius * np.sin(theta), color="C3", lw=1.2)
ax.plot([rmap.omega_1.real, rmap.omega_2.real], [rmap.omega_1.imag, rmap.omega_2.imag], ls="none", marker="x", ms=7, color="C1")
ax.set_xlabel(r"Re $\omega$")
ax.set_ylabel(r"Im $\omega$")
ax.set_title(f"Dominated region, delta = {d1:g} vs {d2:g} (roots and enclosing circle marked)")
fig.tight_layout()
fig.savefig(OUT / "rouche_map.png", dpi=150)
print(f"wrote {OUT / 'rouche_map.png'}")
