"""Piecewise-constant layered media.

A unit cell is a finite stack of homogeneous layers with total width 1.  Two
half-infinite crystals, one tiling x < 0 with cell A and one tiling x >= 0
with cell B, meet at the interface x = 0.  Damping enters through a single
knob delta >= 0: each layer's permittivity becomes

    eps = eps_re + i * eps_im_coeff * delta.

All cells used by the analysis routines are inversion symmetric (the layer
sequence reads the same in both directions); `validate_cell` checks that
along with the basic positivity and width-sum requirements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError

WIDTH_TOL = 1e-12


@dataclass(frozen=True)
class Layer:
    """One homogeneous slab: real permittivity, damping coefficient, width."""

    eps_re: float
    eps_im_coeff: float
    width: float


@dataclass(frozen=True)
class UnitCell:
    """An ordered stack of layers; widths are expected to sum to 1."""

    layers: tuple[Layer, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @property
    def widths(self) -> np.ndarray:
        return np.array([l.width for l in self.layers], dtype=float)

    @property
    def boundaries(self) -> np.ndarray:
        """Right endpoints of each layer, starting from 0."""
        return np.cumsum(self.widths)


@dataclass(frozen=True)
class DampedCell:
    """A unit cell with damping folded in: complex permittivity per layer.

    Keeps a reference to the undamped source cell so continuation code can
    re-damp at a different delta without re-parsing anything.
    """

    eps: tuple[complex, ...]
    widths: tuple[float, ...]
    delta: float
    source: UnitCell

    @property
    def boundaries(self) -> np.ndarray:
        return np.cumsum(np.array(self.widths, dtype=float))


def with_damping(cell: UnitCell, delta: float) -> DampedCell:
    """Apply damping strength delta to every layer of the cell."""
    if delta < 0:
        raise ValueError(f"damping delta must be >= 0, got {delta}")
    eps = tuple(complex(l.eps_re, l.eps_im_coeff * delta) for l in cell.layers)
    widths = tuple(float(l.width) for l in cell.layers)
    return DampedCell(eps=eps, widths=widths, delta=float(delta), source=cell)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...]


def validate_cell(cell: UnitCell) -> ValidationReport:
    """Check positivity, width sum, and inversion symmetry of a cell.

    Returns a report rather than raising so a CLI can show every failure at
    once.  Tolerance for the width sum and the palindrome comparison is 1e-12.
    """
    failures: list[str] = []
    if len(cell.layers) == 0:
        return ValidationReport(False, ("cell has no layers",))
    for i, l in enumerate(cell.layers):
        if not (l.width > 0):
            failures.append(f"layer {i}: width {l.width} is not positive")
        if not (l.eps_re > 0):
            failures.append(f"layer {i}: eps_re {l.eps_re} is not positive")
        if l.eps_im_coeff < 0:
            failures.append(f"layer {i}: eps_im_coeff {l.eps_im_coeff} is negative")
    total = float(np.sum(cell.widths))
    if abs(total - 1.0) > WIDTH_TOL:
        failures.append(f"layer widths sum to {total!r}, expected 1 within {WIDTH_TOL}")
    n = len(cell.layers)
    for i in range(n // 2):
        a, b = cell.layers[i], cell.layers[n - 1 - i]
        if (
            abs(a.eps_re - b.eps_re) > WIDTH_TOL
            or abs(a.eps_im_coeff - b.eps_im_coeff) > WIDTH_TOL
            or abs(a.width - b.width) > WIDTH_TOL
        ):
            failures.append(f"layers {i} and {n - 1 - i} break inversion symmetry")
    return ValidationReport(len(failures) == 0, tuple(failures))


@dataclass(frozen=True)
class InterfaceMedium:
    """Two half-space crystals glued at x = 0, with a common damping delta.

    Cell A tiles (-inf, 0), cell B tiles [0, +inf); both repeat with period 1
    and mu0 is the shared (constant) permeability.
    """

    cell_A: UnitCell
    cell_B: UnitCell
    mu0: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        if self.mu0 <= 0:
            raise ValueError(f"mu0 must be positive, got {self.mu0}")
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")

    @property
    def damped_A(self) -> DampedCell:
        return with_damping(self.cell_A, self.delta)

    @property
    def damped_B(self) -> DampedCell:
        return with_damping(self.cell_B, self.delta)

    def with_delta(self, delta: float) -> "InterfaceMedium":
        return replace(self, delta=float(delta))


def _cell_eps_at(cell: DampedCell, t):
    """Permittivity of one cell at local coordinate t in [0, 1), vectorized.

    Right-continuous at layer boundaries: the layer starting at a boundary
    owns the boundary point.
    """
    bounds = cell.boundaries
    idx = np.searchsorted(bounds, t, side="right")
    idx = np.minimum(idx, len(cell.widths) - 1)
    eps = np.asarray(cell.eps, dtype=complex)
    return eps[idx]


def permittivity_at(medium: InterfaceMedium, x) -> complex:
    """Permittivity of the glued medium at position x (scalar or array).

    x >= 0 samples cell B, x < 0 samples cell A; both via x mod 1, so the
    function is 1-periodic on each side and right-continuous at every layer
    boundary including the interface x = 0.
    """
    x = np.asarray(x, dtype=float)
    t = np.mod(x, 1.0)
    eps_a = _cell_eps_at(medium.damped_A, t)
    eps_b = _cell_eps_at(medium.damped_B, t)
    out = np.where(x >= 0, eps_b, eps_a)
    if out.ndim == 0:
        return complex(out)
    return out


_LAYER_KEYS = {"eps_re", "eps_im_coeff", "width"}
_CELL_KEYS = {"layers"}
_TOP_KEYS = {"mu0", "cell_A", "cell_B", "delta"}


def _parse_layer(obj, where: str) -> Layer:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = set(obj) - _LAYER_KEYS
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    missing = _LAYER_KEYS - set(obj)
    if missing:
        raise ConfigError(f"{where}: missing keys {sorted(missing)}")
    for k in ("eps_re", "eps_im_coeff", "width"):
        if not isinstance(obj[k], (int, float)) or isinstance(obj[k], bool):
            raise ConfigError(f"{where}: {k} must be a number")
    return Layer(eps_re=float(obj["eps_re"]), eps_im_coeff=float(obj["eps_im_coeff"]), width=float(obj["width"]))


def _parse_cell(obj, where: str) -> UnitCell:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = set(obj) - _CELL_KEYS
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    if "layers" not in obj or not isinstance(obj["layers"], list) or not obj["layers"]:
        raise ConfigError(f"{where}: 'layers' must be a non-empty list")
    layers = tuple(_parse_layer(l, f"{where}.layers[{i}]") for i, l in enumerate(obj["layers"]))
    return UnitCell(layers=layers)


def medium_from_dict(obj: dict) -> InterfaceMedium:
    """Build an InterfaceMedium from a parsed config dict; unknown keys are errors."""
    if not isinstance(obj, dict):
        raise ConfigError(f"config root: expected an object, got {type(obj).__name__}")
    unknown = set(obj) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"config root: unknown keys {sorted(unknown)}")
    for k in ("mu0", "cell_A", "cell_B"):
        if k not in obj:
            raise ConfigError(f"config root: missing key '{k}'")
    if not isinstance(obj["mu0"], (int, float)) or isinstance(obj["mu0"], bool):
        raise ConfigError("config root: mu0 must be a number")
    delta = obj.get("delta", 0.0)
    if not isinstance(delta, (int, float)) or isinstance(delta, bool):
        raise ConfigError("config root: delta must be a number")
    if delta < 0:
        raise ConfigError(f"config root: delta must be >= 0, got {delta}")
    if obj["mu0"] <= 0:
        raise ConfigError(f"config root: mu0 must be positive, got {obj['mu0']}")
    return InterfaceMedium(
        cell_A=_parse_cell(obj["cell_A"], "cell_A"),
        cell_B=_parse_cell(obj["cell_B"], "cell_B"),
        mu0=float(obj["mu0"]),
        delta=float(delta),
    )


def load_config(path) -> InterfaceMedium:
    """Read a JSON config file and build the medium it describes."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON: {e}") from e
    return medium_from_dict(obj)
