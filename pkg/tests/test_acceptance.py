"""End-to-end acceptance checks for the whole pipeline.

Each test verifies one headline property at its stated tolerance and prints a
single summary line on success (run with ``pytest tests/test_acceptance.py -v -s``
to see them; a failing property shows up as an ordinary pytest failure).
Frozen reference values live in ref_values.py, independent numerics in
oracles.py.
"""

import time

import numpy as np

import ref_values as ref
from interfacemodes.floquet import (
    GapWindow,
    band_curves,
    cell_matrix,
    common_gap_window,
)
from interfacemodes.impedance import impedance_grid, interface_pairing
from interfacemodes.medium import with_damping
from interfacemodes.modes import interface_mode_profile, verify_decay
from interfacemodes.spectral import (
    Rectangle,
    continuation,
    find_enclosing_contour,
    find_root_real,
    predict_interface_mode,
    refine_root,
    rouche_map,
    winding_number,
)
from oracles import (
    count_real_sign_changes,
    random_case,
    rk4_lattice_states,
    rk4_monodromy,
)

MU0 = 1.0


def _report(label: str, detail: str) -> None:
    print(f"PASS  {label}: {detail}")


def test_cell_matrix_matches_rk4_oracle():
    t0 = time.monotonic()
    rng = np.random.default_rng(20240817)
    worst = 0.0
    for _ in range(100):
        cell, omega = random_case(rng)
        t = np.asarray(cell_matrix(cell, complex(omega), MU0))
        oracle = rk4_monodromy(cell.eps, cell.widths, omega, MU0)
        worst = max(worst, float(np.max(np.abs(t - oracle))))
    assert worst < 1e-8
    worst_det = 0.0
    for _ in range(1000):
        cell, omega = random_case(rng)
        t = np.asarray(cell_matrix(cell, complex(omega), MU0))
        worst_det = max(worst_det, float(abs(np.linalg.det(t) - 1.0)))
    assert worst_det < 1e-12
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0
    _report(
        "cell matrix vs independent RK4 monodromy",
        f"max deviation {worst:.2e} (tol 1e-8), max |det-1| {worst_det:.2e} "
        f"(tol 1e-12), {elapsed:.1f} s",
    )


def test_undamped_gap_has_unique_certified_root(medium):
    t0 = time.monotonic()
    lo, hi = ref.GAP1
    prediction = predict_interface_mode(medium.cell_A, medium.cell_B, medium.mu0, (lo, hi))
    assert prediction.predicted
    assert prediction.index_A.value + prediction.index_B.value == 0
    changes = count_real_sign_changes(medium, lo, hi)
    assert changes == 1
    root = find_root_real(medium, (lo, hi))
    assert root.residual < 1e-10
    assert abs(root.omega - ref.OMEGA_U) < 1e-9
    pad = 0.02 * (hi - lo)
    rect = Rectangle(lo + pad, hi - pad, -0.1, 0.1)
    wn = winding_number(medium, rect)
    assert wn == 1
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0
    _report(
        "unique undamped root in the first shared gap",
        f"indices {prediction.index_A.value:+d}{prediction.index_B.value:+d}, "
        f"{changes} sign change, |Z| = {root.residual:.2e} at "
        f"omega = {root.omega.real:.9f}, gap winding {wn}, {elapsed:.1f} s",
    )


def test_no_roots_off_the_real_axis_undamped(medium, cell_a, cell_b):
    t0 = time.monotonic()
    lo, hi = ref.GAP1
    pad = 0.02 * (hi - lo)
    window = common_gap_window(cell_a, cell_b, MU0, 0.0, (lo + pad, hi - pad), 0.25)
    rng = np.random.default_rng(31)
    width = window.re_max - window.re_min
    height = window.im_max
    total = 0
    for k in range(20):
        a, b = np.sort(rng.uniform(window.re_min + 0.05 * width, window.re_max - 0.05 * width, size=2))
        if b - a < 0.02 * width:
            b = a + 0.02 * width
        im_lo = float(rng.uniform(0.03, 0.35)) * height
        im_hi = min(im_lo + float(rng.uniform(0.1, 0.55)) * height, 0.95 * height)
        if k % 2:
            rect = Rectangle(float(a), float(b), -im_hi, -im_lo)
        else:
            rect = Rectangle(float(a), float(b), im_lo, im_hi)
        total += abs(winding_number(medium, rect))
    assert total == 0
    elapsed = time.monotonic() - t0
    _report(
        "no off-axis roots without damping",
        f"20 random rectangles in both half-planes, all windings 0, {elapsed:.1f} s",
    )


def test_damped_roots_persist_and_converge(medium):
    t0 = time.monotonic()
    base = find_root_real(medium, ref.GAP1)
    omega_u = base.omega
    drifts = []
    for target in (1e-2, 1e-3, 1e-4, 1e-5):
        path = continuation(medium.with_delta, target, initial_step=target / 4.0, start=base)
        root = path[-1]
        assert root.delta == target
        assert root.winding == 1
        assert root.residual < 1e-10
        drifts.append(abs(root.omega - omega_u))
    assert all(later < earlier for earlier, later in zip(drifts, drifts[1:]))
    assert drifts[-1] < drifts[0] / 10.0
    attempts = []
    path = continuation(medium.with_delta, 0.5, initial_step=0.05, start=base, attempts=attempts)
    accepted = [a for a in attempts if a.accepted]
    assert path[-1].delta == 0.5
    assert path[-1].residual < 1e-10
    assert len(accepted) >= 2
    assert all(a.winding == 1 for a in accepted)
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    _report(
        "damped continuation certified and converging",
        f"drift {drifts[0]:.2e} -> {drifts[-1]:.2e} over delta 1e-2 -> 1e-5, "
        f"{len(accepted)} certified steps to delta 0.5, {elapsed:.1f} s",
    )


def test_rouche_maps_classify_roots_and_enclose(medium, cell_a, cell_b):
    t0 = time.monotonic()
    lo, hi = ref.GAP1
    pad = 0.02 * (hi - lo)
    seed = (lo + pad, hi - pad)
    for d1, d2 in ((0.0, 5e-5), (0.5, 0.50005)):
        windows = [
            common_gap_window(cell_a, cell_b, MU0, d, seed, 0.25) for d in sorted({d1, d2})
        ]
        window = GapWindow(
            re_min=windows[0].re_min,
            re_max=windows[0].re_max,
            im_min=windows[0].im_min,
            im_max=windows[0].im_max,
            margin=min(w.margin for w in windows),
            sample_density=windows[0].sample_density,
            delta=d2,
        )
        rmap = rouche_map(medium.with_delta(d1), medium.with_delta(d2), window, resolution=200)
        assert not np.any(rmap.region == "pole")
        r1, r2 = rmap.root_1, rmap.root_2
        assert r1.region == "w"
        assert abs(r1.lhs - r1.rhs) <= rmap.tie_tol
        assert r2.region == "w"
        assert r2.rhs - r2.lhs > rmap.tie_tol
        circle = find_enclosing_contour(rmap)
        assert circle is not None
        assert abs(rmap.omega_1 - circle.center) < circle.radius
        assert abs(rmap.omega_2 - circle.center) < circle.radius
    elapsed = time.monotonic() - t0
    assert elapsed < 120.0
    _report(
        "comparison maps separate and enclose root pairs",
        f"both damping pairs classified at 200x200, enclosing circles found, {elapsed:.1f} s",
    )


def test_damping_pushes_first_band_off_axis(cell_a):
    t0 = time.monotonic()
    # the first band passes through omega = 0 at kappa = 0 for every damping
    # value, so the drift comparison runs on an interior kappa grid
    kappas = np.linspace(0.05 * np.pi, np.pi, 24)
    deltas = (0.0, 0.429, 1.143, 1.186)
    magnitudes = []
    for d in deltas:
        curves = band_curves(with_damping(cell_a, d), MU0, kappas, (0.0, 2.0))
        assert len(curves) == 1
        magnitudes.append(np.abs(curves[0].omega.imag))
    assert np.all(magnitudes[0] < 1e-9)
    for earlier, later in zip(magnitudes, magnitudes[1:]):
        assert np.all(later > earlier)
    elapsed = time.monotonic() - t0
    _report(
        "damping pushes the first band off the real axis",
        f"|Im omega| strictly increasing at every kappa across delta {deltas}, "
        f"max {float(np.max(magnitudes[-1])):.3f}, {elapsed:.1f} s",
    )


def test_mode_decay_envelope_and_blind_integration(medium):
    t0 = time.monotonic()
    m = medium.with_delta(0.5)
    root = refine_root(m, ref.ROOT_HALF)
    assert root.winding == 1
    profile = interface_mode_profile(m, root, n_cells=20)
    report = verify_decay(profile, ratio_tol=1e-10)
    assert report.ok
    assert report.n_checked == 40
    worst_rel = 0.0
    for n_target in (10, -10):
        slope = profile.slope_right if n_target > 0 else profile.slope_left
        states = rk4_lattice_states(m, profile.omega, [1.0, slope], n_target)
        for k in range(abs(n_target) + 1):
            n = k * (1 if n_target > 0 else -1)
            i = int(np.nonzero(profile.lattice_n == n)[0][0])
            expected = profile.lattice_u[i]
            rel = abs(states[k, 0] - expected) / abs(expected)
            worst_rel = max(worst_rel, float(rel))
    assert worst_rel < 1e-6
    elapsed = time.monotonic() - t0
    _report(
        "geometric decay verified and cross-integrated",
        f"ratio errors value {report.max_ratio_err_value:.2e} / flux "
        f"{report.max_ratio_err_flux:.2e} over {report.n_checked} lattice steps, "
        f"blind integration rel error {worst_rel:.2e} over 10 cells/side, {elapsed:.1f} s",
    )


def test_impedance_zero_iff_pairing_zero(medium, cell_a, cell_b):
    t0 = time.monotonic()
    m = medium.with_delta(0.5)
    lo, hi = ref.GAP1
    pad = 0.02 * (hi - lo)
    window = common_gap_window(cell_a, cell_b, MU0, 0.5, (lo + pad, hi - pad), 0.25)
    res = np.linspace(window.re_min, window.re_max, 50)
    ims = np.linspace(window.im_min, window.im_max, 50)
    pts = (res[None, :] + 1j * ims[:, None]).ravel()
    root = refine_root(m, ref.ROOT_HALF)
    pts = np.append(pts, root.omega)
    grid = impedance_grid(m, pts)
    flagged = grid["pole_a"] | grid["pole_b"] | grid["band_a"] | grid["band_b"]
    assert not np.any(flagged)
    pairing = np.array([interface_pairing(m, complex(w)) for w in pts])
    small_z = np.abs(grid["z"]) < 1e-8
    small_pairing = np.abs(pairing) < 1e-8
    assert np.array_equal(small_z, small_pairing)
    assert small_z[-1] and small_pairing[-1]
    elapsed = time.monotonic() - t0
    _report(
        "impedance zero iff eigenvector pairing zero",
        f"agreement on a 50x50 gap-window grid plus the root point "
        f"(both {float(np.abs(grid['z'][-1])):.1e} / {float(np.abs(pairing[-1])):.1e} there), "
        f"{elapsed:.1f} s",
    )
