"""Band structure of a two-phase layered medium, with and without damping.

Builds the quarter-half-quarter reference cell, traces its Floquet bands on
the real axis, then switches the damping on and follows the first few bands
into the complex frequency plane.  Figures land in demos/output/.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from interfacemodes import band_curves, common_real_gaps, real_gaps, with_damping
from interfacemodes.medium import Layer, UnitCell

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

MU0 = 1.0
cell_a = UnitCell(
    layers=(
        Layer(eps_re=1.0, eps_im_coeff=1.0, width=0.25),
        Layer(eps_re=4.0, eps_im_coeff=1.0, width=0.5),
        Layer(eps_re=1.0, eps_im_coeff=1.0, width=0.25),
    )
)
# the right half-space uses the same crystal shifted by half a period
cell_b = UnitCell(
    layers=(
        Layer(eps_re=4.0, eps_im_coeff=1.0, width=0.25),
        Layer(eps_re=1.0, eps_im_coeff=1.0, width=0.5),
        Layer(eps_re=4.0, eps_im_coeff=1.0, width=0.25),
    )
)

# 1. the undamped picture: bands on the real axis, gaps between them.
# Both cells are the same crystal up to a shift, so they share the spectrum
# and every gap; what differs is the topology of the gaps (see the interface
# mode demo).
gaps = common_real_gaps(real_gaps(cell_a, MU0, omega_max=12.0), real_gaps(cell_b, MU0, omega_max=12.0))
print("shared band gaps below omega = 12:")
for lo, hi in gaps:
    print(f"  ({lo:.6f}, {hi:.6f})  width {hi - lo:.6f}")

kappas = np.linspace(0.0, np.pi, 301)
curves = band_curves(with_damping(cell_a, 0.0), MU0, kappas, (0.0, 12.0))

fig, ax = plt.subplots(figsize=(5.0, 6.0))
for lo, hi in gaps:
    ax.axhspan(lo, hi, color="0.88", zorder=0)
for c in curves:
    ax.plot(c.kappa, c.omega.real, color="C0", lw=1.5)
ax.set_xlabel(r"Bloch phase $\kappa$")
ax.set_ylabel(r"$\omega$")
ax.set_xlim(0, np.pi)
ax.set_ylim(0, 12)
ax.set_title("Undamped band structure (gaps shaded)")
fig.tight_layout()
fig.savefig(OUT / "bands_undamped.png", dpi=150)
print(f"wrote {OUT / 'bands_undamped.png'}")

# 2. switch the damping on.  Each band detaches from the real axis and bends
# into the lower half-plane; stronger damping pushes it further down.  The
# first band stays pinned at omega = 0 (kappa = 0), where the operator does
# not see the permittivity at all.
deltas = (0.0, 0.4, 0.8, 1.2)
fig, ax = plt.subplots(figsize=(6.5, 4.5))
inner = np.linspace(0.02 * np.pi, np.pi, 200)
for i, d in enumerate(deltas):
    for c in band_curves(with_damping(cell_a, d), MU0, inner, (0.0, 8.0)):
        label = rf"$\delta = {d:g}$" if c.band_index == 1 else None
        ax.plot(c.omega.real, c.omega.imag, color=f"C{i}", lw=1.5, label=label)
ax.axhline(0.0, color="0.6", lw=0.8)
ax.set_xlabel(r"Re $\omega$")
ax.set_ylabel(r"Im $\omega$")
ax.set_title("Band curves in the complex plane")
ax.legend(loc="lower left", fontsize=9)
fig.tight_layout()
fig.savefig(OUT / "bands_damped.png", dpi=150)
print(f"wrote {OUT / 'bands_damped.png'}")
