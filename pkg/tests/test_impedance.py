import numpy as np
import pytest

from interfacemodes.errors import BandCollision, PoleDetected
from interfacemodes.floquet import cell_matrix
from interfacemodes.impedance import (
    impedance_grid,
    interface_impedance,
    interface_pairing,
    surface_impedance_left,
    surface_impedance_right,
)

import ref_values as ref
from oracles import eig_stable_ratio


def test_surface_impedance_right_matches_eig_oracle(medium):
    for omega in (1.8, 2.0, 2.2, 2.4):
        z = surface_impedance_right(medium.damped_B, 1.0, complex(omega))
        t = np.asarray(cell_matrix(medium.damped_B, complex(omega), 1.0))
        assert abs(z - eig_stable_ratio(t)) < 1e-10 * max(1.0, abs(z))


def test_surface_impedance_left_is_reflected_right(medium):
    # for an inversion-symmetric cell the left impedance equals V1/V2 of the
    # cell's own decaying eigenvector, with the sign flip absorbed twice
    for omega in (1.8, 2.1, 2.35):
        zl = surface_impedance_left(medium.damped_A, 1.0, complex(omega))
        t = np.asarray(cell_matrix(medium.damped_A, complex(omega), 1.0))
        assert abs(zl - eig_stable_ratio(t)) < 1e-10 * max(1.0, abs(zl))


def test_surface_impedance_real_in_real_gap(medium):
    for omega in np.linspace(ref.GAP1[0] + 0.05, ref.GAP1[1] - 0.05, 9):
        za = surface_impedance_left(medium.damped_A, 1.0, complex(omega))
        zb = surface_impedance_right(medium.damped_B, 1.0, complex(omega))
        assert abs(za.imag) < 1e-12 * max(1.0, abs(za))
        assert abs(zb.imag) < 1e-12 * max(1.0, abs(zb))


def test_surface_impedance_pole_tolerance_knob(medium):
    # at the first gap's lower edge the A-side eigenvector is value-like, so
    # its impedance blows up; a loose pole tolerance must flag it
    with pytest.raises(PoleDetected):
        surface_impedance_left(medium.damped_A, 1.0, complex(ref.GAP1[0]), pole_tol=1e-3)
    # the B side is flux-like there: small impedance, no pole either way
    zb = surface_impedance_right(medium.damped_B, 1.0, complex(ref.GAP1[0]), pole_tol=1e-3)
    assert abs(zb) < 0.1


def test_interface_impedance_is_sum(medium):
    omega = complex(2.1)
    sample = interface_impedance(medium, omega)
    za = surface_impedance_left(medium.damped_A, 1.0, omega)
    zb = surface_impedance_right(medium.damped_B, 1.0, omega)
    assert abs(sample.z_a - za) < 1e-14
    assert abs(sample.z_b - zb) < 1e-14
    assert abs(sample.z - (za + zb)) < 1e-14
    assert not sample.pole_a and not sample.pole_b


def test_interface_impedance_vanishes_at_root(medium):
    sample = interface_impedance(medium, complex(ref.OMEGA_U))
    assert abs(sample.z) < 1e-10


def test_interface_impedance_band_raises(medium):
    with pytest.raises(BandCollision):
        interface_impedance(medium, complex(1.0))


def test_pairing_vanishes_at_root_and_matches_eigenvectors(medium):
    from interfacemodes.floquet import stable_eigenpair

    assert abs(interface_pairing(medium, complex(ref.OMEGA_U))) < 1e-10

    omega = complex(2.2)
    ta = np.asarray(cell_matrix(medium.damped_A, omega, 1.0))
    tb = np.asarray(cell_matrix(medium.damped_B, omega, 1.0))
    va = stable_eigenpair(ta).v_in
    vb = stable_eigenpair(tb).v_in
    expected = -vb[1] * va[0] - vb[0] * va[1]
    assert abs(interface_pairing(medium, omega) - expected) < 1e-12


def test_impedance_grid_matches_scalar(medium):
    omegas = np.linspace(1.75, 2.4, 15).astype(complex)
    grid = impedance_grid(medium, omegas)
    for i, w in enumerate(omegas):
        sample = interface_impedance(medium, complex(w))
        assert abs(grid["z"][i] - sample.z) < 1e-13
        assert abs(grid["z_a"][i] - sample.z_a) < 1e-13
        assert abs(grid["z_b"][i] - sample.z_b) < 1e-13


def test_impedance_grid_flags_bands_without_raising(medium):
    omegas = np.array([1.0, 2.0, 3.0], dtype=complex)  # band, gap, band
    grid = impedance_grid(medium, omegas)
    assert grid["band_a"].tolist() == [True, False, True]
    assert np.isnan(grid["z"][0]) and np.isnan(grid["z"][2])
    assert np.isfinite(grid["z"][1])


def test_impedance_off_axis_clean_at_zero_damping(medium):
    # no bands away from the real axis when nothing is damped
    omegas = np.linspace(ref.GAP1[0] + 0.02, ref.GAP1[1] - 0.02, 40) + 0.1j
    grid = impedance_grid(medium, omegas)
    flagged = grid["pole_a"] | grid["pole_b"] | grid["band_a"] | grid["band_b"]
    assert not np.any(flagged)
    assert np.all(np.isfinite(grid["z"]))


def test_impedance_damped_grid(medium):
    damped = medium.with_delta(0.5)
    omegas = np.linspace(1.75, 2.35, 30) - 0.18j
    grid = impedance_grid(damped, omegas)
    flagged = grid["pole_a"] | grid["pole_b"] | grid["band_a"] | grid["band_b"]
    assert not np.any(flagged)
    # complex now: imaginary parts genuinely nonzero somewhere
    assert np.max(np.abs(grid["z"].imag)) > 1e-3
