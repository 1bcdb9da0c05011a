"""Transfer matrices and Floquet-Bloch spectra of one unit cell.

State convention.  The second-order problem

    -(1/mu0) d/dx( (1/eps) du/dx ) = omega^2 u

is tracked through the state vector (u, v) with v = (1/eps) u', the flux.
Both components are continuous across material discontinuities, so layer
matrices compose by plain multiplication.  With k = omega*sqrt(mu0*eps) a
layer of width d maps (u, v) by

    [[cos(kd),            eps*sin(kd)/k],
     [-(k/eps)*sin(kd),   cos(kd)     ]]

whose entries are even in k (the square-root branch is immaterial) and whose
determinant is exactly 1.  The discriminant f(omega) = tr(cell matrix) drives
everything else: the dispersion relation is 2 cos(kappa) = f(omega), and a
point belongs to a band iff f is real with |f| <= 2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import BandCollision, ContinuationBreakdown, WindowInvaded
from .medium import DampedCell, UnitCell, with_damping

FD_STEP_SCALE = 1e-6  # central-difference step is FD_STEP_SCALE * max(1, |omega|)


def _as_damped(cell) -> DampedCell:
    if isinstance(cell, DampedCell):
        return cell
    if isinstance(cell, UnitCell):
        return with_damping(cell, 0.0)
    raise TypeError(f"expected UnitCell or DampedCell, got {type(cell).__name__}")


def layer_matrix(eps: complex, width: float, omega, mu0: float) -> np.ndarray:
    """Transfer matrix of one homogeneous layer; omega may be an array.

    Returns an array of shape omega.shape + (2, 2).  The k -> 0 limit is the
    shear [[1, eps*d], [0, 1]], reached smoothly through sinc.
    """
    omega = np.asarray(omega, dtype=complex)
    k = omega * np.sqrt(mu0 * eps)
    kd = k * width
    c = np.cos(kd)
    s = np.sinc(kd / np.pi)  # sin(kd)/(kd), = 1 at kd = 0
    m = np.empty(omega.shape + (2, 2), dtype=complex)
    m[..., 0, 0] = c
    m[..., 0, 1] = eps * width * s
    m[..., 1, 0] = -(k * k * width / eps) * s
    m[..., 1, 1] = c
    return m


def cell_matrix(cell, omega, mu0: float) -> np.ndarray:
    """Transfer matrix across one unit cell, leftmost layer applied first."""
    cell = _as_damped(cell)
    omega = np.asarray(omega, dtype=complex)
    m = None
    for eps, width in zip(cell.eps, cell.widths):
        lm = layer_matrix(eps, width, omega, mu0)
        m = lm if m is None else lm @ m
    return m


def discriminant(cell, omega, mu0: float):
    """f(omega) = trace of the cell matrix; scalar in, scalar out."""
    m = cell_matrix(cell, omega, mu0)
    f = m[..., 0, 0] + m[..., 1, 1]
    if f.ndim == 0:
        return complex(f)
    return f


def discriminant_derivative(cell, omega, mu0: float):
    """df/domega by central differences with step 1e-6 * max(1, |omega|)."""
    omega = np.asarray(omega, dtype=complex)
    h = FD_STEP_SCALE * np.maximum(1.0, np.abs(omega))
    fp = discriminant(cell, omega + h, mu0)
    fm = discriminant(cell, omega - h, mu0)
    d = (np.asarray(fp) - np.asarray(fm)) / (2 * h)
    if d.ndim == 0:
        return complex(d)
    return d


class SpectrumKind(enum.Enum):
    BAND = "band"
    GAP = "gap"


@dataclass(frozen=True)
class PointClassification:
    kind: SpectrumKind
    f: complex
    tol_im: float
    tol_mag: float

    @property
    def is_band(self) -> bool:
        return self.kind is SpectrumKind.BAND


def classify_point(cell, omega: complex, mu0: float, tol_im: float = 1e-9, tol_mag: float = 1e-9) -> PointClassification:
    """Band/gap test at one frequency.

    Band membership requires f real (|Im f| <= tol_im) AND |f| <= 2 - tol_mag;
    everything else is a gap point.  A negative tol_mag widens the band test
    to |f| <= 2 + |tol_mag|, which window certification uses for detection.
    """
    f = discriminant(cell, complex(omega), mu0)
    is_band = abs(f.imag) <= tol_im and abs(f) <= 2.0 - tol_mag
    kind = SpectrumKind.BAND if is_band else SpectrumKind.GAP
    return PointClassification(kind=kind, f=f, tol_im=tol_im, tol_mag=tol_mag)


@dataclass(frozen=True)
class EigenSplit:
    """Floquet multipliers split by modulus, with matched eigenvectors.

    lambda_in is the stable multiplier (|lambda| < 1, decay to the right),
    lambda_out = 1/lambda_in its partner.  Eigenvectors have unit Euclidean
    norm and their first nonzero component rotated to positive real.
    """

    lambda_in: complex
    lambda_out: complex
    v_in: np.ndarray
    v_out: np.ndarray


def _eigen_arrays(t: np.ndarray, margin: float):
    """Vectorized eigen-split of a batch of unit-determinant 2x2 matrices.

    Returns (lam_in, lam_out, v_in, v_out, collision) where collision marks
    points with |lam_in| >= 1 - margin.  Eigenvectors come from the
    numerically larger row of (T - lambda I).
    """
    t00, t01 = t[..., 0, 0], t[..., 0, 1]
    t10, t11 = t[..., 1, 0], t[..., 1, 1]
    tr = t00 + t11
    disc = np.sqrt(tr * tr - 4.0 + 0j)
    lam_a = (tr - disc) / 2.0
    lam_b = (tr + disc) / 2.0
    swap = np.abs(lam_b) < np.abs(lam_a)
    lam_in = np.where(swap, lam_b, lam_a)
    lam_out = np.where(swap, lam_a, lam_b)
    collision = np.abs(lam_in) >= 1.0 - margin

    def kernel_vector(lam):
        a1, b1 = t00 - lam, t01
        a2, b2 = t10, t11 - lam
        use_first = np.abs(a1) ** 2 + np.abs(b1) ** 2 >= np.abs(a2) ** 2 + np.abs(b2) ** 2
        va = np.where(use_first, b1, b2)
        vb = np.where(use_first, -a1, -a2)
        norm = np.sqrt(np.abs(va) ** 2 + np.abs(vb) ** 2)
        norm = np.where(norm == 0, 1.0, norm)
        va, vb = va / norm, vb / norm
        ref = np.where(np.abs(va) > 1e-12, va, vb)
        mag = np.abs(ref)
        phase = np.where(mag == 0, 1.0, ref / np.where(mag == 0, 1.0, mag))
        va, vb = va / phase, vb / phase
        return np.stack([va, vb], axis=-1)

    return lam_in, lam_out, kernel_vector(lam_in), kernel_vector(lam_out), collision


def stable_eigenpair(t: np.ndarray, margin: float = 1e-6) -> EigenSplit:
    """Split one transfer matrix into stable/unstable multiplier and vectors.

    Raises BandCollision when |lambda_in| >= 1 - margin, i.e. too close to a
    band for the split to be trustworthy.
    """
    t = np.asarray(t, dtype=complex)
    lam_in, lam_out, v_in, v_out, collision = _eigen_arrays(t, margin)
    if collision:
        raise BandCollision(
            f"|lambda_in| = {abs(complex(lam_in)):.15g} >= 1 - {margin:g}; too close to a band"
        )
    return EigenSplit(
        lambda_in=complex(lam_in),
        lambda_out=complex(lam_out),
        v_in=np.asarray(v_in, dtype=complex).reshape(2),
        v_out=np.asarray(v_out, dtype=complex).reshape(2),
    )


def propagate_states(cell, omega: complex, mu0: float, state0: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Closed-form state (u, v) at in-cell positions xs in [0, 1].

    state0 is the state at the cell's left edge.  Each x is assigned to the
    layer that owns it (right-continuous at boundaries, the final boundary x = 1
    belongs to the last layer) and evaluated in closed form from the state at
    that layer's left edge.  Works for damped cells and complex omega.
    """
    cell = _as_damped(cell)
    xs = np.asarray(xs, dtype=float)
    flat = xs.ravel()
    bounds = cell.boundaries
    layer_idx = np.minimum(np.searchsorted(bounds, flat, side="right"), len(cell.widths) - 1)
    # states at each layer's left edge
    states = [np.asarray(state0, dtype=complex)]
    for eps, width in zip(cell.eps[:-1], cell.widths[:-1]):
        m = layer_matrix(eps, width, complex(omega), mu0)
        states.append(m @ states[-1])
    lefts = np.concatenate([[0.0], bounds[:-1]])
    out = np.empty(flat.shape + (2,), dtype=complex)
    for j, (eps, _w) in enumerate(zip(cell.eps, cell.widths)):
        sel = layer_idx == j
        if not np.any(sel):
            continue
        k = complex(omega) * np.sqrt(mu0 * eps)
        d = flat[sel] - lefts[j]
        kd = k * d
        c = np.cos(kd)
        s = np.sinc(kd / np.pi)
        u0, v0 = states[j]
        out[sel, 0] = u0 * c + v0 * eps * d * s
        out[sel, 1] = -u0 * (k * k * d / eps) * s + v0 * c
    return out.reshape(xs.shape + (2,))


# ---------------------------------------------------------------------------
# Real-axis spectrum of the undamped cell
# ---------------------------------------------------------------------------


def real_gaps(cell: UnitCell, mu0: float, omega_max: float, scan_step: float = 1e-3) -> list[tuple[float, float]]:
    """Maximal intervals of (0, omega_max] where |f| >= 2, i.e. spectral gaps.

    Dense scan at scan_step followed by bisection of |f| - 2 to 1e-10 on each
    crossing.  The cell must be undamped (real permittivity).
    """
    damped = _as_damped(cell)
    if any(abs(e.imag) > 0 for e in damped.eps):
        raise ValueError("real_gaps expects an undamped cell")
    n = max(int(np.ceil(omega_max / scan_step)), 8)
    omegas = np.linspace(scan_step, omega_max, n)
    f = discriminant(damped, omegas, mu0).real
    g = np.abs(f) - 2.0

    def gfun(w):
        return abs(discriminant(damped, complex(w), mu0).real) - 2.0

    crossings = []
    for i in range(len(omegas) - 1):
        if g[i] == 0.0:
            crossings.append(omegas[i])
        elif g[i] * g[i + 1] < 0:
            crossings.append(brentq(gfun, omegas[i], omegas[i + 1], xtol=1e-10, rtol=8.9e-16))
    # walk the scan, opening a gap when g goes positive and closing on return
    gaps = []
    in_gap = g[0] > 0
    start = omegas[0] if in_gap else None
    ci = 0
    for i in range(len(omegas) - 1):
        if g[i] * g[i + 1] < 0 or g[i] == 0.0:
            x = crossings[ci]
            ci += 1
            if in_gap:
                gaps.append((start, x))
                in_gap = False
            else:
                start = x
                in_gap = True
    if in_gap:
        gaps.append((start, omegas[-1]))
    return [(float(a), float(b)) for a, b in gaps if b > a]


def common_real_gaps(gaps_a: list[tuple[float, float]], gaps_b: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Nonempty pairwise intersections of two gap lists, sorted, merged order."""
    out = []
    for a_lo, a_hi in gaps_a:
        for b_lo, b_hi in gaps_b:
            lo, hi = max(a_lo, b_lo), min(a_hi, b_hi)
            if hi > lo:
                out.append((lo, hi))
    return sorted(out)


# ---------------------------------------------------------------------------
# Damped band curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BandCurve:
    """One spectral band at fixed damping: omega(kappa) along a kappa grid."""

    band_index: int
    kappa: np.ndarray
    omega: np.ndarray
    residual: np.ndarray
    delta: float


def _real_band_intervals(cell0: DampedCell, mu0: float, omega_window: tuple[float, float], scan_step: float):
    """Maximal intervals of the window where |f| <= 2 for the undamped cell."""
    lo, hi = omega_window
    lo = max(lo, 0.0)
    gaps = real_gaps(cell0.source, mu0, hi, scan_step)
    # complement of the gaps within [lo, hi]
    bands = []
    cursor = lo
    for g_lo, g_hi in gaps:
        if g_lo > cursor:
            bands.append((cursor, min(g_lo, hi)))
        cursor = max(cursor, g_hi)
        if cursor >= hi:
            break
    if cursor < hi:
        bands.append((cursor, hi))
    return [(a, b) for a, b in bands if b - a > 10 * scan_step]


def _newton_in_delta(cell: DampedCell, mu0: float, kappa: np.ndarray, omega0: np.ndarray, tol: float = 1e-12, max_iter: int = 60):
    """Vectorized Newton for f_delta(omega) = 2 cos(kappa), seeded at omega0."""
    target = 2.0 * np.cos(kappa)
    z = omega0.astype(complex).copy()
    done = np.zeros(z.shape, dtype=bool)
    for _ in range(max_iter):
        g = np.asarray(discriminant(cell, z, mu0)) - target
        resid = np.abs(g)
        done = resid < tol
        if done.all():
            break
        d = np.asarray(discriminant_derivative(cell, z, mu0))
        bad = np.abs(d) == 0
        d = np.where(bad, 1.0, d)
        step = np.where(done | bad, 0.0, g / d)
        z = z - step
    g = np.asarray(discriminant(cell, z, mu0)) - target
    return z, np.abs(g)


def band_curves(
    cell,
    mu0: float,
    kappa_grid: np.ndarray,
    omega_window: tuple[float, float],
    seed_scan_step: float = 1e-3,
    residual_tol: float = 1e-10,
) -> list[BandCurve]:
    """Band curves omega(kappa) of a (possibly damped) cell inside a window.

    Seeds every curve on the real axis at delta = 0 (bisection of the
    monotone undamped discriminant per band), then continues in delta with
    vectorized Newton over the whole kappa grid, halving the delta step on
    failure.  Raises ContinuationBreakdown with the last good damping when
    the step underflows.
    """
    cell = _as_damped(cell)
    kappa = np.asarray(kappa_grid, dtype=float)
    if kappa.ndim != 1 or len(kappa) == 0:
        raise ValueError("kappa_grid must be a nonempty 1-D array")
    if np.any((kappa < 0) | (kappa > np.pi)):
        raise ValueError("kappa values must lie in [0, pi]")
    cell0 = with_damping(cell.source, 0.0)
    intervals = _real_band_intervals(cell0, mu0, omega_window, seed_scan_step)

    curves = []
    for n, (a, b) in enumerate(intervals, start=1):
        fa = discriminant(cell0, complex(a), mu0).real
        fb = discriminant(cell0, complex(b), mu0).real
        omega0 = np.empty(len(kappa), dtype=float)
        for i, kap in enumerate(kappa):
            target = 2.0 * np.cos(kap)

            def g(w, target=target):
                return discriminant(cell0, complex(w), mu0).real - target

            ga, gb = fa - target, fb - target
            if abs(ga) < 1e-12:
                omega0[i] = a
            elif abs(gb) < 1e-12:
                omega0[i] = b
            elif ga * gb < 0:
                omega0[i] = brentq(g, a, b, xtol=1e-12, rtol=8.9e-16)
            else:
                # band truncated by the window; take the nearer endpoint
                omega0[i] = a if abs(ga) < abs(gb) else b
        omega = omega0.astype(complex)
        delta_cur, step = 0.0, max(cell.delta, 1e-12)
        while delta_cur < cell.delta:
            delta_next = min(delta_cur + step, cell.delta)
            trial = with_damping(cell.source, delta_next)
            z, resid = _newton_in_delta(trial, mu0, kappa, omega)
            if np.all(resid < residual_tol):
                omega = z
                delta_cur = delta_next
            else:
                step /= 2.0
                if step < 1e-8 * max(1.0, cell.delta):
                    worst = int(np.argmax(resid))
                    raise ContinuationBreakdown(
                        f"band {n}: stuck at delta={delta_cur:.6g} "
                        f"(kappa={kappa[worst]:.6g}, residual={resid[worst]:.3g})"
                    )
        final = with_damping(cell.source, cell.delta)
        resid = np.abs(np.asarray(discriminant(final, omega, mu0)) - 2.0 * np.cos(kappa))
        curves.append(BandCurve(band_index=n, kappa=kappa, omega=omega, residual=resid, delta=cell.delta))
    return curves


# ---------------------------------------------------------------------------
# Certified gap windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GapWindow:
    """A rectangle in the complex plane certified band-free for both cells."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    margin: float
    sample_density: int
    delta: float

    def contains(self, omega: complex) -> bool:
        return bool(
            self.re_min <= omega.real <= self.re_max and self.im_min <= omega.imag <= self.im_max
        )


def _band_distance_estimate(cell: DampedCell, mu0: float, omegas: np.ndarray) -> np.ndarray:
    """First-order distance from each omega to the band set of the cell.

    The band set is the preimage of the segment [-2, 2] under f, so
    dist(f(omega), [-2,2]) / |f'(omega)| estimates the distance in omega.
    """
    f = np.asarray(discriminant(cell, omegas, mu0))
    fp = np.asarray(discriminant_derivative(cell, omegas, mu0))
    dx = np.maximum(np.abs(f.real) - 2.0, 0.0)
    dist_f = np.hypot(dx, f.imag)
    return dist_f / np.maximum(np.abs(fp), 1e-12)


def common_gap_window(
    cell_A: UnitCell,
    cell_B: UnitCell,
    mu0: float,
    delta: float,
    real_seed_interval: tuple[float, float],
    im_halfwidth: float,
    sample_density: int = 64,
) -> GapWindow:
    """Certify a rectangle around a real gap interval as band-free at damping delta.

    Samples a cell-centered sample_density x sample_density grid for both
    damped cells.  A grid point invalidates the window when it classifies as
    a band point outright or when the first-order band-distance estimate
    falls below half the grid spacing (a band curve passing between grid
    points).  The smallest distance estimate over the grid is recorded as the
    window's margin.
    """
    lo, hi = float(real_seed_interval[0]), float(real_seed_interval[1])
    if not (hi > lo):
        raise ValueError("real_seed_interval must be a nonempty interval")
    if im_halfwidth <= 0:
        raise ValueError("im_halfwidth must be positive")
    n = int(sample_density)
    if n < 4:
        raise ValueError("sample_density must be at least 4")
    dre = (hi - lo) / n
    dim = (2.0 * im_halfwidth) / n
    re = lo + (np.arange(n) + 0.5) * dre
    im = -im_halfwidth + (np.arange(n) + 0.5) * dim
    omegas = (re[None, :] + 1j * im[:, None]).ravel()
    threshold = 0.5 * min(dre, dim)

    margin = np.inf
    for cell in (cell_A, cell_B):
        dc = with_damping(cell, delta)
        d_est = _band_distance_estimate(dc, mu0, omegas)
        f = np.asarray(discriminant(dc, omegas, mu0))
        strict_band = (np.abs(f.imag) <= 1e-9) & (np.abs(f) <= 2.0 - 1e-9)
        bad = strict_band | (d_est < threshold)
        if np.any(bad):
            i = int(np.argmax(bad))
            raise WindowInvaded(
                f"band point near omega = {omegas[i]:.9g} "
                f"(distance estimate {d_est[i]:.3g} < {threshold:.3g})"
            )
        margin = min(margin, float(d_est.min()))
    return GapWindow(
        re_min=lo,
        re_max=hi,
        im_min=-im_halfwidth,
        im_max=im_halfwidth,
        margin=margin,
        sample_density=n,
        delta=float(delta),
    )
