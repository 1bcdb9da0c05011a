"""Mode prediction, root finding, winding certificates, and Rouche region maps.

Two independent routes to the same interface modes live here.  The symmetry
route classifies each crystal's gap by the parity of its band-edge Bloch
state (the bulk index) and predicts a mode when the two indices cancel.  The
analytic route treats Z(omega) as a meromorphic function on a certified gap
window and locates/certifies its zeros directly: bracketed sign changes on
the real axis at zero damping, Newton refinement plus argument-principle
winding certificates off the axis, and small-step continuation in the
damping strength.  The Rouche machinery compares two dampings D1, D2 of the
same medium through the region where |Z_D2| exceeds |Z_D2 - Z_D1|; a circle
inside that region enclosing both roots certifies that they are the same
zero continued from one damping to the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import (
    BandCollision,
    Diverged,
    NoSignChange,
    ParityAmbiguous,
    PhaseRefinementExhausted,
    PoleDetected,
    PoleOnContour,
    RatioInconsistent,
    StepOutOfWindow,
    StepUnderflow,
)
from .floquet import (
    GapWindow,
    cell_matrix,
    common_real_gaps,
    discriminant,
    propagate_states,
    real_gaps,
)
from .impedance import impedance_grid, interface_impedance
from .medium import InterfaceMedium, UnitCell


# ---------------------------------------------------------------------------
# Contours
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Circle:
    """Positively oriented circle |omega - center| = radius."""

    center: complex
    radius: float

    def points(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return self.center + self.radius * np.exp(2j * np.pi * t)


@dataclass(frozen=True)
class Rectangle:
    """Positively oriented axis-aligned rectangle boundary."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def points(self, t) -> np.ndarray:
        t = np.mod(np.asarray(t, dtype=float), 1.0)
        w = self.re_max - self.re_min
        h = self.im_max - self.im_min
        out = np.empty(t.shape, dtype=complex)
        s = t * 4.0
        m0 = s < 1.0
        m1 = (s >= 1.0) & (s < 2.0)
        m2 = (s >= 2.0) & (s < 3.0)
        m3 = s >= 3.0
        out[m0] = self.re_min + w * s[m0] + 1j * self.im_min
        out[m1] = self.re_max + 1j * (self.im_min + h * (s[m1] - 1.0))
        out[m2] = self.re_max - w * (s[m2] - 2.0) + 1j * self.im_max
        out[m3] = self.re_min + 1j * (self.im_max - h * (s[m3] - 3.0))
        return out


# ---------------------------------------------------------------------------
# Winding numbers by adaptive phase tracking
# ---------------------------------------------------------------------------


def _eval_contour(medium: InterfaceMedium, omegas: np.ndarray) -> np.ndarray:
    g = impedance_grid(medium, omegas)
    if np.any(g["pole_a"]) or np.any(g["pole_b"]):
        raise PoleOnContour("impedance pole flag raised on a contour sample")
    if np.any(g["band_a"]) or np.any(g["band_b"]):
        raise BandCollision("contour sample too close to a band")
    return g["z"]


def winding_number(medium: InterfaceMedium, contour, max_depth: int = 24, initial_samples: int = 64) -> int:
    """Net phase winding of Z along a closed contour, in full turns.

    Samples are refined until every consecutive phase increment is below
    pi/2, which pins the branch of the argument; the sum of increments is
    then an integer multiple of 2 pi.  For meromorphic Z this counts zeros
    minus poles enclosed.  Raises PhaseRefinementExhausted when max_depth
    rounds of subdivision cannot reach the pi/2 bound, and PoleOnContour /
    BandCollision when a sample cannot be evaluated.
    """
    ts = np.linspace(0.0, 1.0, initial_samples, endpoint=False)
    zs = _eval_contour(medium, contour.points(ts))
    if np.any(np.abs(zs) == 0.0):
        raise PhaseRefinementExhausted("Z vanishes exactly on the contour")
    for _depth in range(max_depth):
        z_next = np.roll(zs, -1)
        dphi = np.angle(z_next / zs)
        bad = np.abs(dphi) >= np.pi / 2
        if not np.any(bad):
            total = float(np.sum(dphi))
            return int(np.rint(total / (2 * np.pi)))
        # subdivide every offending segment
        t_next = np.roll(ts, -1)
        t_next[-1] += 1.0
        mids = (ts[bad] + t_next[bad]) / 2.0
        z_mid = _eval_contour(medium, contour.points(np.mod(mids, 1.0)))
        if np.any(np.abs(z_mid) == 0.0):
            raise PhaseRefinementExhausted("Z vanishes exactly on the contour")
        ts = np.concatenate([ts, np.mod(mids, 1.0)])
        zs = np.concatenate([zs, z_mid])
        order = np.argsort(ts)
        ts, zs = ts[order], zs[order]
    raise PhaseRefinementExhausted(
        f"phase increments still >= pi/2 after {max_depth} refinement rounds"
    )


# ---------------------------------------------------------------------------
# Bulk index and edge parity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BulkIndex:
    """Parity classification of one band edge of one crystal's gap."""

    value: int
    edge_omega: complex
    edge_kappa: float
    parity_evidence: float


def _edge_state(t: np.ndarray, lam: complex) -> np.ndarray:
    """Kernel vector of (T - lam I) from its numerically larger row, normalized."""
    rows = np.array([[t[0, 0] - lam, t[0, 1]], [t[1, 0], t[1, 1] - lam]], dtype=complex)
    norms = np.abs(rows).sum(axis=1)
    a, b = rows[int(np.argmax(norms))]
    v = np.array([b, -a], dtype=complex)
    n = np.linalg.norm(v)
    if n == 0:
        return np.array([1.0, 0.0], dtype=complex)
    v /= n
    ref = v[0] if abs(v[0]) > 1e-12 else v[1]
    v *= abs(ref) / ref
    return v


def bulk_index(cell, mu0: float, gap: tuple[float, float], side: str, parity_tol: float = 1e-6) -> BulkIndex:
    """Bulk index of a gap edge from the parity of its Bloch state.

    At a band edge the Floquet multiplier is +1 (f = 2, kappa = 0) or -1
    (f = -2, kappa = pi) and, for an inversion-symmetric cell, the edge
    state is (1, 0) or (0, 1) up to the edge-location error: a vanishing
    flux component means an even mode (index +1), a vanishing value
    component an odd mode (index -1).  The multiplier is snapped to +/-1
    before extracting the state so the evidence ratio stays at the
    edge-location error level.  Raises ParityAmbiguous when neither
    component is suppressed below parity_tol.
    """
    if side not in ("lower", "upper"):
        raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")
    edge = complex(gap[0] if side == "lower" else gap[1])
    t = cell_matrix(cell, edge, mu0)
    f = t[0, 0] + t[1, 1]
    if abs(abs(f.real) - 2.0) > 1e-6 or abs(f.imag) > 1e-6:
        raise ValueError(f"f(edge) = {complex(f):.6g} is not at a band edge")
    lam = 1.0 if f.real > 0 else -1.0
    kappa = 0.0 if lam > 0 else float(np.pi)
    v = _edge_state(np.asarray(t), lam)
    mags = np.abs(v)
    evidence = float(mags.min() / mags.max())
    if evidence > parity_tol:
        raise ParityAmbiguous(
            f"edge state {v} has no suppressed component (evidence {evidence:.3g} > {parity_tol:g})"
        )
    value = 1 if mags[1] < mags[0] else -1
    return BulkIndex(value=value, edge_omega=edge, edge_kappa=kappa, parity_evidence=evidence)


def zak_phase_at_edge(cell, mu0: float, edge_omega: complex, kappa_edge: float, offsets=None, rel_tol: float = 1e-6) -> float:
    """Reflection phase of the edge Bloch mode about the lattice point x = 0.

    Builds the Bloch mode u on one period from the edge state and evaluates
    the ratio u(-h)/u(h) = e^{-i kappa} u(1-h)/u(h) over a set of offsets h,
    discarding offsets too close to a node.  The ratios must agree to
    rel_tol (relative), else RatioInconsistent; the returned value is the
    argument of their mean.  For inversion-symmetric cells this comes out 0
    or pi (mod 2 pi) whenever edge_omega is an exact band edge, damped or
    not: the edge state is purely value- or flux-carrying, so the mode is
    exactly even or odd.
    """
    edge = complex(edge_omega)
    t = np.asarray(cell_matrix(cell, edge, mu0))
    f = t[0, 0] + t[1, 1]
    lam = np.exp(1j * kappa_edge)
    if abs(lam.imag) > 1e-9:
        raise ValueError(f"kappa_edge must be 0 or pi, got {kappa_edge!r}")
    lam = 1.0 if lam.real > 0 else -1.0
    if abs(f - 2.0 * lam) > 1e-6 * (2.0 + abs(f)):
        raise ValueError(
            f"f(edge) = {complex(f):.6g} does not match a band edge at kappa = {kappa_edge:g}"
        )
    state = _edge_state(t, lam)
    if offsets is None:
        offsets = np.linspace(0.04, 0.46, 15)
    hs = np.asarray(offsets, dtype=float)
    if np.any((hs <= 0) | (hs >= 1)):
        raise ValueError("offsets must lie strictly inside (0, 1)")
    xs = np.concatenate([hs, 1.0 - hs])
    u = propagate_states(cell, edge, mu0, state, xs)[:, 0]
    u_h, u_mirror = u[: len(hs)], u[len(hs):]
    scale = np.abs(u).max()
    keep = (np.abs(u_h) > 1e-8 * scale) & (np.abs(u_mirror) > 1e-8 * scale)
    if keep.sum() < 3:
        raise RatioInconsistent("too few usable offsets: mode nearly vanishes at most sample points")
    ratios = lam * u_mirror[keep] / u_h[keep]  # e^{-i kappa} = lam for kappa in {0, pi}
    mean = np.mean(ratios)
    spread = float(np.max(np.abs(ratios - mean)) / max(abs(mean), 1e-300))
    if spread > rel_tol:
        raise RatioInconsistent(f"reflection ratios disagree: relative spread {spread:.3g} > {rel_tol:g}")
    return float(np.angle(mean))


@dataclass(frozen=True)
class ModePrediction:
    predicted: bool
    index_A: BulkIndex
    index_B: BulkIndex


def predict_interface_mode(cell_A: UnitCell, cell_B: UnitCell, mu0: float, gap: tuple[float, float]) -> ModePrediction:
    """Symmetry-route prediction: a mode exists in the common gap iff the
    two bulk indices (lower-edge parity of each crystal's own surrounding
    gap) sum to zero."""
    mid = 0.5 * (gap[0] + gap[1])
    indices = []
    for cell in (cell_A, cell_B):
        own = None
        for lo, hi in real_gaps(cell, mu0, omega_max=gap[1] * 1.5 + 1.0):
            if lo <= mid <= hi:
                own = (lo, hi)
                break
        if own is None:
            raise ValueError(f"no gap of the cell contains the midpoint {mid:g} of the common gap")
        indices.append(bulk_index(cell, mu0, own, side="lower"))
    j_a, j_b = indices
    return ModePrediction(predicted=(j_a.value + j_b.value == 0), index_A=j_a, index_B=j_b)


# ---------------------------------------------------------------------------
# Roots of Z
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootResult:
    """A located root of Z with its certificate."""

    omega: complex
    residual: float
    winding: int | None
    contour: object
    delta: float
    iterations: int = 0


def _z_samples(medium: InterfaceMedium, omegas: np.ndarray):
    g = impedance_grid(medium, omegas)
    bad = g["pole_a"] | g["pole_b"] | g["band_a"] | g["band_b"]
    return g["z"], bad


def find_root_real(medium: InterfaceMedium, interval: tuple[float, float], tol: float = 1e-10, scan_points: int = 2001) -> RootResult:
    """Bracket and bisect the real root of Z inside a real gap at delta = 0.

    Z is real on the real axis of a gap when nothing is damped, so a sign
    change brackets a root; candidates whose refined |Z| stays above tol
    (pole crossings look like sign changes too) are rejected, with one
    densified rescan near rejected or pole-flagged brackets.  The result
    carries a winding certificate on a small rectangle around the root.
    Raises NoSignChange when no bracket survives.
    """
    if medium.delta != 0:
        raise ValueError("find_root_real requires an undamped medium (delta = 0)")
    lo, hi = float(interval[0]), float(interval[1])
    if not hi > lo:
        raise ValueError("interval must be nonempty")

    def refine_brackets(a: float, b: float, n: int):
        xs = np.linspace(a, b, n)[1:-1]
        z, bad = _z_samples(medium, xs.astype(complex))
        if np.any(np.abs(z.imag[~bad]) > 1e-9 * np.maximum(1.0, np.abs(z[~bad]))):
            raise ValueError("Z is not real on the real axis; is the medium damped?")
        out = []
        vals = z.real
        idx = np.nonzero(~bad)[0]
        for i, j in zip(idx[:-1], idx[1:]):
            if np.sign(vals[i]) * np.sign(vals[j]) < 0:
                out.append((xs[i], xs[j], j - i > 1))
        return out

    def g(w: float) -> float:
        return interface_impedance(medium, complex(w)).z.real

    candidates = refine_brackets(lo, hi, scan_points)
    for a, b, had_gap in candidates:
        # a bracket spanning excluded samples gets a densified local rescan
        sub = [(x1, x2) for x1, x2, _ in refine_brackets(a, b, 200)] if had_gap else [(a, b)]
        for x1, x2 in sub:
            try:
                r = brentq(g, x1, x2, xtol=1e-14, rtol=8.9e-16)
            except (ValueError, PoleDetected):
                continue
            sample = interface_impedance(medium, complex(r))
            if sample.pole_a or sample.pole_b or not abs(sample.z) < tol:
                continue
            half = min(2e-3 * (hi - lo), (r - lo) / 2, (hi - r) / 2)
            rect = Rectangle(r - half, r + half, -half, half)
            w = winding_number(medium, rect)
            return RootResult(omega=complex(r), residual=abs(sample.z), winding=w, contour=rect, delta=0.0)
    raise NoSignChange(f"no impedance sign change found in ({lo:g}, {hi:g}) with {scan_points} samples")


def refine_root(
    medium: InterfaceMedium,
    omega0: complex,
    tol: float = 1e-10,
    max_iter: int = 40,
    window: GapWindow | None = None,
    certify: bool = True,
) -> RootResult:
    """Newton-refine a root of Z from omega0, with an a-posteriori certificate.

    The derivative is a central difference with step 1e-6 * max(1, |omega|).
    On success the result carries a winding count over the circle of radius
    max(4 * displacement, 1e-6) centered at the root.  Raises Diverged when
    the iteration budget runs out (or Z cannot be evaluated along the way)
    and StepOutOfWindow when an iterate leaves the given window.
    """
    w = complex(omega0)
    for it in range(max_iter + 1):
        if window is not None and not window.contains(w):
            raise StepOutOfWindow(f"iterate {w:.9g} left the window")
        h = 1e-6 * max(1.0, abs(w))
        z3, bad = _z_samples(medium, np.array([w, w + h, w - h], dtype=complex))
        if bad[0] or not np.isfinite(z3[0]):
            raise Diverged(f"Z not evaluable at iterate {w:.9g}")
        if abs(z3[0]) < tol:
            disp = abs(w - complex(omega0))
            winding = None
            contour = None
            if certify:
                contour = Circle(center=w, radius=max(4.0 * disp, 1e-6))
                winding = winding_number(medium, contour)
            return RootResult(
                omega=w, residual=abs(z3[0]), winding=winding, contour=contour, delta=medium.delta, iterations=it
            )
        if bad[1] or bad[2]:
            raise Diverged(f"Z not evaluable near iterate {w:.9g}")
        d = (z3[1] - z3[2]) / (2 * h)
        if d == 0 or not np.isfinite(d):
            raise Diverged(f"vanishing derivative at iterate {w:.9g}")
        w = w - z3[0] / d
        if not np.isfinite(w):
            raise Diverged("iterate left the finite plane")
    raise Diverged(f"no convergence after {max_iter} iterations; last iterate {w:.9g}")


@dataclass(frozen=True)
class ContinuationAttempt:
    """One trial step of the damping continuation, accepted or not."""

    delta: float
    omega: complex
    residual: float
    winding: int | None
    accepted: bool


def continuation(
    medium_family,
    delta_target: float,
    initial_step: float,
    tol: float = 1e-10,
    start: RootResult | None = None,
    window: GapWindow | None = None,
    seed_interval: tuple[float, float] | None = None,
    min_step: float = 1e-8,
    attempts: list | None = None,
) -> list[RootResult]:
    """Continue the interface-mode root from delta = 0 up to delta_target.

    medium_family maps a damping value to the medium.  Steps are adaptive:
    a failed step (Newton divergence, certificate not a single zero, any
    evaluation error) halves the step; three consecutive successes grow it
    by 1.5x up to initial_step.  Every accepted root carries a winding
    certificate on the circle of radius max(4 * step displacement, 1e-6).
    Raises StepUnderflow when the step drops below min_step; the exception
    message reports the last certified damping.
    """
    if delta_target < 0:
        raise ValueError("delta_target must be >= 0")
    if initial_step <= 0:
        raise ValueError("initial_step must be positive")
    if start is None:
        m0 = medium_family(0.0)
        if seed_interval is None:
            gaps = common_real_gaps(
                real_gaps(m0.cell_A, m0.mu0, omega_max=20.0),
                real_gaps(m0.cell_B, m0.mu0, omega_max=20.0),
            )
            if not gaps:
                raise ValueError("the two crystals share no gap below omega = 20")
            seed_interval = gaps[0]
        start = find_root_real(m0, seed_interval, tol=tol)
    path = [start]
    if attempts is not None:
        attempts.append(
            ContinuationAttempt(start.delta, start.omega, start.residual, start.winding, True)
        )
    delta_cur, root_cur = start.delta, start
    step = float(initial_step)
    streak = 0
    while delta_cur < delta_target:
        delta_next = min(delta_cur + step, delta_target)
        medium = medium_family(delta_next)
        try:
            r = refine_root(medium, root_cur.omega, tol=tol, window=window)
            ok = r.winding == 1
        except (Diverged, StepOutOfWindow, BandCollision, PoleDetected, PoleOnContour, PhaseRefinementExhausted):
            r, ok = None, False
        if attempts is not None:
            if r is None:
                attempts.append(ContinuationAttempt(delta_next, complex(np.nan), float("nan"), None, False))
            else:
                attempts.append(ContinuationAttempt(delta_next, r.omega, r.residual, r.winding, ok))
        if ok:
            path.append(r)
            delta_cur, root_cur = delta_next, r
            streak += 1
            if streak >= 3:
                step = min(step * 1.5, initial_step)
        else:
            streak = 0
            step /= 2.0
            if step < min_step:
                raise StepUnderflow(
                    f"continuation step underflow at delta = {delta_cur:.9g} "
                    f"(last certified root {root_cur.omega:.9g})"
                )
    return path


# ---------------------------------------------------------------------------
# Rouche region maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootRegion:
    """Classification diagnostics of one root on a Rouche map."""

    omega: complex
    lhs: float
    rhs: float
    region: str


@dataclass
class RoucheMap:
    """Raster of the comparison |Z_D2| vs |Z_D2 - Z_D1| over a gap window.

    region holds 'c' where |Z_D2| > |Z_D2 - Z_D1| + tie_tol, 'pole' where
    either impedance is unavailable, and 'w' otherwise (ties land in 'w',
    matching the closed inequality that defines the weak region).
    """

    window: GapWindow
    re: np.ndarray
    im: np.ndarray
    region: np.ndarray
    delta_1: float
    delta_2: float
    omega_1: complex
    omega_2: complex
    root_1: RootRegion
    root_2: RootRegion
    tie_tol: float
    medium_1: InterfaceMedium = field(repr=False, default=None)
    medium_2: InterfaceMedium = field(repr=False, default=None)


def _classify_rouche(z1: np.ndarray, z2: np.ndarray, bad: np.ndarray, tie_tol: float) -> np.ndarray:
    lhs = np.abs(z2)
    rhs = np.abs(z2 - z1)
    region = np.where(lhs - rhs > tie_tol, "c", "w").astype(object)
    region[bad] = "pole"
    return region


def rouche_map(
    medium_1: InterfaceMedium,
    medium_2: InterfaceMedium,
    window: GapWindow,
    resolution: int = 200,
    roots: tuple[complex, complex] | None = None,
    tie_tol: float = 1e-9,
    initial_step: float = 0.05,
) -> RoucheMap:
    """Raster the Rouche comparison regions of two dampings of one medium.

    medium_1 and medium_2 must share cells and mu0 and differ only in delta.
    When roots are not supplied, each damping's interface root is obtained by
    continuation from the shared undamped root over the window's real extent.
    The two roots are classified by the same comparison as the raster, with
    ties (within tie_tol) resolved into 'w': a root of Z_D1 sits exactly on
    the boundary where |Z_D2| equals |Z_D2 - Z_D1|.
    """
    if medium_1.cell_A != medium_2.cell_A or medium_1.cell_B != medium_2.cell_B or medium_1.mu0 != medium_2.mu0:
        raise ValueError("the two media must differ only in damping")
    n = int(resolution)
    if n < 2:
        raise ValueError("resolution must be at least 2")
    re = np.linspace(window.re_min, window.re_max, n)
    im = np.linspace(window.im_min, window.im_max, n)
    omegas = (re[None, :] + 1j * im[:, None]).ravel()
    z1, bad1 = _z_samples(medium_1, omegas)
    z2, bad2 = _z_samples(medium_2, omegas)
    bad = bad1 | bad2
    region = _classify_rouche(z1, z2, bad, tie_tol).reshape(n, n)

    if roots is None:
        seed = (window.re_min, window.re_max)
        located = []
        for m in (medium_1, medium_2):
            if m.delta == 0:
                located.append(find_root_real(m, seed).omega)
            else:
                family = m.with_delta
                path = continuation(family, m.delta, initial_step=min(initial_step, max(m.delta, 1e-6)), seed_interval=seed)
                located.append(path[-1].omega)
        omega_1, omega_2 = located
    else:
        omega_1, omega_2 = complex(roots[0]), complex(roots[1])

    def classify_root(w: complex) -> RootRegion:
        z1r, b1 = _z_samples(medium_1, np.array([w], dtype=complex))
        z2r, b2 = _z_samples(medium_2, np.array([w], dtype=complex))
        lhs = float(np.abs(z2r[0]))
        rhs = float(np.abs(z2r[0] - z1r[0]))
        if b1[0] or b2[0]:
            reg = "pole"
        else:
            reg = "c" if lhs - rhs > tie_tol else "w"
        return RootRegion(omega=w, lhs=lhs, rhs=rhs, region=reg)

    return RoucheMap(
        window=window,
        re=re,
        im=im,
        region=region,
        delta_1=medium_1.delta,
        delta_2=medium_2.delta,
        omega_1=omega_1,
        omega_2=omega_2,
        root_1=classify_root(omega_1),
        root_2=classify_root(omega_2),
        tie_tol=tie_tol,
        medium_1=medium_1,
        medium_2=medium_2,
    )


def find_enclosing_contour(rmap: RoucheMap, n_radii: int = 60, n_points: int = 512) -> Circle | None:
    """Search for a circle inside the strong region enclosing both roots.

    Circles are centered at the midpoint of the two roots and swept over a
    geometric radius grid from just beyond the root half-separation out to
    the window boundary.  The first circle whose samples all classify 'c'
    is returned; None (a legitimate outcome) when no radius works.
    """
    center = (rmap.omega_1 + rmap.omega_2) / 2.0
    half_sep = abs(rmap.omega_1 - rmap.omega_2) / 2.0
    w = rmap.window
    r_hi = min(
        center.real - w.re_min,
        w.re_max - center.real,
        center.imag - w.im_min,
        w.im_max - center.imag,
    )
    r_lo = max(1.2 * half_sep, 1e-6)
    if not (r_hi > r_lo):
        return None
    ts = np.arange(n_points) / n_points
    for radius in np.geomspace(r_lo, r_hi, n_radii):
        circle = Circle(center=center, radius=float(radius))
        pts = circle.points(ts)
        z1, b1 = _z_samples(rmap.medium_1, pts)
        z2, b2 = _z_samples(rmap.medium_2, pts)
        bad = b1 | b2
        if np.any(bad):
            continue
        region = _classify_rouche(z1, z2, bad, rmap.tie_tol)
        if np.all(region == "c"):
            return circle
    return None
