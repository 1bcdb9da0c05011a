"""Surface impedances of the two half-space crystals and their sum.

The half-space solution that decays to the right of the interface must leave
x = 0 along the stable eigenvector (V1, V2) of cell B's transfer matrix, so

    Z_B = u / v |_{x=0+} = V1 / V2.

On the left, decay toward -infinity singles out the reflection S v_in of cell
A's stable eigenvector, S = diag(1, -1) (for inversion-symmetric cells this
is exactly the unstable eigenvector), and the sign convention

    Z_A = -u / v |_{x=0-}

makes Z_A = V1 / V2 again in terms of cell A's own stable eigenvector.  An
interface mode exists precisely where Z = Z_A + Z_B vanishes.  Poles of
either term (vanishing flux component) are flagged, not raised, at the
interface level so scans can keep going.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleDetected
from .floquet import _eigen_arrays, cell_matrix, stable_eigenpair
from .medium import InterfaceMedium

POLE_TOL = 1e-12  # |V2| < POLE_TOL * |V1| counts as a pole


def surface_impedance_right(cell, mu0: float, omega: complex, margin: float = 1e-6, pole_tol: float = POLE_TOL) -> complex:
    """Impedance of the right half-space crystal built from `cell`.

    Raises BandCollision near bands and PoleDetected when the stable
    eigenvector's flux component (numerically) vanishes.
    """
    t = cell_matrix(cell, complex(omega), mu0)
    es = stable_eigenpair(t, margin=margin)
    v1, v2 = es.v_in
    if abs(v2) < pole_tol * abs(v1):
        raise PoleDetected(f"right surface impedance pole at omega = {omega!r}")
    return complex(v1 / v2)


def surface_impedance_left(cell, mu0: float, omega: complex, margin: float = 1e-6, pole_tol: float = POLE_TOL) -> complex:
    """Impedance of the left half-space crystal built from `cell`.

    The left-decaying solution's interface state is the reflected stable
    eigenvector (V1, -V2); with the left-side sign convention the result is
    again V1 / V2.
    """
    t = cell_matrix(cell, complex(omega), mu0)
    es = stable_eigenpair(t, margin=margin)
    w1, w2 = es.v_in[0], -es.v_in[1]
    if abs(w2) < pole_tol * abs(w1):
        raise PoleDetected(f"left surface impedance pole at omega = {omega!r}")
    return complex(-w1 / w2)


@dataclass(frozen=True)
class ImpedanceSample:
    """One evaluation of the interface impedance with pole bookkeeping."""

    omega: complex
    z_a: complex
    z_b: complex
    z: complex
    pole_a: bool
    pole_b: bool


def interface_impedance(medium: InterfaceMedium, omega: complex, margin: float = 1e-6, pole_tol: float = POLE_TOL) -> ImpedanceSample:
    """Z(omega) = Z_A + Z_B with poles flagged instead of raised.

    A flagged side reports nan for its impedance; the sum is nan whenever
    either side is flagged.  Band collisions still raise, since no impedance
    is defined on a band.
    """
    pole_a = pole_b = False
    try:
        z_a = surface_impedance_left(medium.damped_A, medium.mu0, omega, margin, pole_tol)
    except PoleDetected:
        z_a = complex(np.nan, np.nan)
        pole_a = True
    try:
        z_b = surface_impedance_right(medium.damped_B, medium.mu0, omega, margin, pole_tol)
    except PoleDetected:
        z_b = complex(np.nan, np.nan)
        pole_b = True
    z = z_a + z_b
    return ImpedanceSample(omega=complex(omega), z_a=z_a, z_b=z_b, z=z, pole_a=pole_a, pole_b=pole_b)


def interface_pairing(medium: InterfaceMedium, omega: complex, margin: float = 1e-6) -> complex:
    """Pairing of the two stable eigenvectors whose zeros are the modes.

    With A's stable eigenvector (V1a, V2a) and B's (V1b, V2b), returns

        (-V2b, V1b) . (V1a, -V2a) = -V2b*V1a - V1b*V2a,

    which vanishes exactly where Z_A + Z_B does (the two differ by the
    nonzero factor -V2a*V2b away from poles).
    """
    ta = cell_matrix(medium.damped_A, complex(omega), medium.mu0)
    tb = cell_matrix(medium.damped_B, complex(omega), medium.mu0)
    ea = stable_eigenpair(ta, margin=margin)
    eb = stable_eigenpair(tb, margin=margin)
    v1a, v2a = ea.v_in
    v1b, v2b = eb.v_in
    return complex(-v2b * v1a - v1b * v2a)


def impedance_grid(medium: InterfaceMedium, omegas, margin: float = 1e-6, pole_tol: float = POLE_TOL):
    """Vectorized interface impedance over an array of frequencies.

    Returns a dict of arrays: z_a, z_b, z, pole_a, pole_b, band_a, band_b.
    Band-collision points carry nan impedances and a band flag instead of an
    exception, so rasters and scans can sweep arbitrary rectangles.
    """
    omegas = np.asarray(omegas, dtype=complex)
    out = {}
    for side, cell in (("a", medium.damped_A), ("b", medium.damped_B)):
        t = cell_matrix(cell, omegas, medium.mu0)
        lam_in, _lam_out, v_in, _v_out, collision = _eigen_arrays(t, margin)
        v1, v2 = v_in[..., 0], v_in[..., 1]
        pole = np.abs(v2) < pole_tol * np.abs(v1)
        bad = pole | collision
        denom = np.where(bad, 1.0, v2)
        z = np.where(bad, complex(np.nan, np.nan), v1 / denom)
        out["z_" + side] = z
        out["pole_" + side] = pole
        out["band_" + side] = collision
        out["lambda_" + side] = lam_in
    out["z"] = out["z_a"] + out["z_b"]
    return out
