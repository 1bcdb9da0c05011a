"""Interface mode profiles and their decay structure.

A certified root of Z determines one bound state.  Its profile is built
from the Floquet eigenvectors, never by long-range numerical integration:
on the right half-lattice the state at x = n is lambda_B^n times the
interface state, on the left it is lambda_A^|n| times the reflected
eigenvector, and within each cell the exact layer matrices interpolate.
Decay is therefore geometric to machine precision cell over cell, which
verify_decay checks ratio by ratio.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotARoot
from .floquet import cell_matrix, propagate_states, stable_eigenpair
from .impedance import interface_impedance, interface_pairing
from .medium import InterfaceMedium


@dataclass(frozen=True)
class DecayEnvelope:
    """Geometric envelope F(x) = rate^|x| with per-side rates."""

    omega: complex
    rate_left: float
    rate_right: float

    def at_lattice(self, n) -> np.ndarray:
        n = np.asarray(n)
        rate = np.where(n < 0, self.rate_left, self.rate_right)
        return rate ** np.abs(n)

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        rate = np.where(x < 0, self.rate_left, self.rate_right)
        return rate ** np.abs(x)


def _root_omega(root) -> complex:
    return complex(getattr(root, "omega", root))


@dataclass
class ModeProfile:
    """Dense profile of one interface mode, normalized to u(0) = 1.

    lattice_u and lattice_v hold the state at integer x in lattice_n; x, u,
    v sample the interiors through the exact layer matrices; envelope is
    the matching geometric bound.  Value and flux are continuous across
    every layer boundary and lattice point by construction; at x = 0 the
    flux jump equals the interface pairing defect, which is of the order of
    the impedance residual of the root.
    """

    omega: complex
    medium: InterfaceMedium
    n_cells: int
    rate_left: float
    rate_right: float
    lambda_left: complex
    lambda_right: complex
    slope_left: complex
    slope_right: complex
    lattice_n: np.ndarray
    lattice_u: np.ndarray
    lattice_v: np.ndarray
    lattice_F: np.ndarray
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    envelope: np.ndarray
    impedance_residual: float
    pairing_residual: float
    _cells: tuple = field(repr=False, default=None)

    def _anchor(self, n: np.ndarray) -> np.ndarray:
        """Exact lattice state at integer positions n, any range."""
        n = np.asarray(n)
        states = np.empty(n.shape + (2,), dtype=complex)
        left = n < 0
        states[left, 0] = self.lambda_left ** (-n[left])
        states[left, 1] = self.slope_left * states[left, 0]
        states[~left, 0] = self.lambda_right ** n[~left]
        states[~left, 1] = self.slope_right * states[~left, 0]
        return states

    def evaluate(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Value and flux at arbitrary positions, cell by exact cell."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        cell_A, cell_B = self._cells
        n = np.floor(x).astype(int)
        u = np.empty(x.shape, dtype=complex)
        v = np.empty(x.shape, dtype=complex)
        for nc in np.unique(n):
            sel = n == nc
            anchor = self._anchor(np.array([nc]))[0]
            cell = cell_A if nc < 0 else cell_B
            st = propagate_states(cell, self.omega, self.medium.mu0, anchor, x[sel] - nc)
            u[sel] = st[:, 0]
            v[sel] = st[:, 1]
        return u, v

    @property
    def decay(self) -> DecayEnvelope:
        return DecayEnvelope(omega=self.omega, rate_left=self.rate_left, rate_right=self.rate_right)


def interface_mode_profile(
    medium: InterfaceMedium,
    root,
    n_cells: int = 10,
    samples_per_cell: int = 64,
    root_tol: float = 1e-8,
    margin: float = 1e-6,
) -> ModeProfile:
    """Synthesize the bound state at a root of Z.

    root may be a RootResult or a bare frequency; it must satisfy
    |Z| <= root_tol * max(1, |Z_A|, |Z_B|) or NotARoot is raised, as it is
    when either half-space impedance is at a pole or omega sits in a band.
    The two half-lattices are anchored on their own Floquet eigenvectors
    (stable side for B, reflected stable side for A), so each side's
    cell-over-cell decay is exactly geometric with ratio |lambda| and no
    integration error accumulates with distance.
    """
    omega = _root_omega(root)
    if n_cells < 1:
        raise ValueError("n_cells must be at least 1")
    if samples_per_cell < 2:
        raise ValueError("samples_per_cell must be at least 2")
    sample = interface_impedance(medium, omega, margin=margin)
    if sample.pole_a or sample.pole_b:
        raise NotARoot(f"half-space impedance pole at omega = {omega:.9g}")
    scale = max(1.0, abs(sample.z_a), abs(sample.z_b))
    if not abs(sample.z) <= root_tol * scale:
        raise NotARoot(
            f"|Z({omega:.9g})| = {abs(sample.z):.3g} exceeds {root_tol:g} * {scale:.3g}"
        )
    pairing = interface_pairing(medium, omega, margin=margin)

    cell_A, cell_B = medium.damped_A, medium.damped_B
    split_A = stable_eigenpair(np.asarray(cell_matrix(cell_A, omega, medium.mu0)), margin=margin)
    split_B = stable_eigenpair(np.asarray(cell_matrix(cell_B, omega, medium.mu0)), margin=margin)
    lam_A, v_A = split_A.lambda_in, split_A.v_in
    lam_B, v_B = split_B.lambda_in, split_B.v_in
    if abs(v_A[0]) < 1e-12 or abs(v_B[0]) < 1e-12:
        raise NotARoot("interface value component vanishes; the state is flux-only at x = 0")
    slope_right = v_B[1] / v_B[0]
    slope_left = -v_A[1] / v_A[0]  # reflected eigenvector carries the growing multiplier

    profile = ModeProfile(
        omega=omega,
        medium=medium,
        n_cells=int(n_cells),
        rate_left=abs(lam_A),
        rate_right=abs(lam_B),
        lambda_left=lam_A,
        lambda_right=lam_B,
        slope_left=slope_left,
        slope_right=slope_right,
        lattice_n=np.empty(0, dtype=int),
        lattice_u=np.empty(0, dtype=complex),
        lattice_v=np.empty(0, dtype=complex),
        lattice_F=np.empty(0),
        x=np.empty(0),
        u=np.empty(0, dtype=complex),
        v=np.empty(0, dtype=complex),
        envelope=np.empty(0),
        impedance_residual=abs(sample.z),
        pairing_residual=abs(pairing),
        _cells=(cell_A, cell_B),
    )

    ns = np.arange(-n_cells, n_cells + 1)
    lattice = profile._anchor(ns)
    profile.lattice_n = ns
    profile.lattice_u = lattice[:, 0]
    profile.lattice_v = lattice[:, 1]
    profile.lattice_F = profile.decay.at_lattice(ns)

    frac = np.arange(samples_per_cell) / samples_per_cell
    xs_parts = [nc + frac for nc in range(-n_cells, n_cells)]
    xs_parts.append(np.array([float(n_cells)]))
    xs = np.concatenate(xs_parts)
    u, v = profile.evaluate(xs)
    profile.x = xs
    profile.u = u
    profile.v = v
    profile.envelope = profile.decay.evaluate(xs)
    return profile


def decay_envelope(medium: InterfaceMedium, root, margin: float = 1e-6) -> DecayEnvelope:
    """Per-side geometric decay rates |lambda| of the mode at a root."""
    omega = _root_omega(root)
    split_A = stable_eigenpair(np.asarray(cell_matrix(medium.damped_A, omega, medium.mu0)), margin=margin)
    split_B = stable_eigenpair(np.asarray(cell_matrix(medium.damped_B, omega, medium.mu0)), margin=margin)
    return DecayEnvelope(omega=omega, rate_left=abs(split_A.lambda_in), rate_right=abs(split_B.lambda_in))


@dataclass(frozen=True)
class DecayReport:
    """Outcome of the cell-over-cell decay verification."""

    ok: bool
    rate_left: float
    rate_right: float
    max_ratio_err_value: float
    max_ratio_err_flux: float
    bound_value: float
    bound_flux: float
    n_checked: int


def verify_decay(profile: ModeProfile, ratio_tol: float = 1e-10) -> DecayReport:
    """Check that lattice magnitudes contract by exactly |lambda| per cell.

    Compares |u_{n+1}| / |u_n| (and the flux analogue) against the
    corresponding side's rate on every lattice step moving away from the
    interface, and reports the supremum of |u| / F over the dense samples
    as the envelope bound constant.  ok requires every ratio to match its
    rate within ratio_tol relative error.
    """
    ns = profile.lattice_n
    absu = np.abs(profile.lattice_u)
    absv = np.abs(profile.lattice_v)
    err_u = 0.0
    err_v = 0.0
    checked = 0
    for i in range(len(ns) - 1):
        n_lo, n_hi = ns[i], ns[i + 1]
        if n_hi <= 0:
            rate, outer, inner = profile.rate_left, i, i + 1
            # the flux is one-sided at the interface: the left chain ends on
            # the A-side limit slope_left * u(0), not on the stored B-side flux
            v_inner = abs(profile.slope_left) * absu[inner] if n_hi == 0 else absv[inner]
        else:
            rate, outer, inner = profile.rate_right, i + 1, i
            v_inner = absv[inner]
        if absu[inner] == 0 or v_inner == 0:
            continue
        err_u = max(err_u, abs(absu[outer] / absu[inner] - rate) / rate)
        err_v = max(err_v, abs(absv[outer] / v_inner - rate) / rate)
        checked += 1
    envelope = profile.envelope
    good = envelope > 0
    bound_value = float(np.max(np.abs(profile.u[good]) / envelope[good]))
    bound_flux = float(np.max(np.abs(profile.v[good]) / envelope[good]))
    ok = bool(err_u <= ratio_tol and err_v <= ratio_tol)
    return DecayReport(
        ok=ok,
        rate_left=profile.rate_left,
        rate_right=profile.rate_right,
        max_ratio_err_value=float(err_u),
        max_ratio_err_flux=float(err_v),
        bound_value=bound_value,
        bound_flux=bound_flux,
        n_checked=checked,
    )
