"""Deterministic file output: atomic writes, round-trip floats, fixed schemas.

Identical inputs must produce byte-identical files, so nothing here looks at
the clock or at iteration order of anything unordered: floats are written in
shortest round-trip form (repr), JSON keys are sorted, CSV rows arrive in a
caller-fixed order, and files land via an atomic rename.  NaN never reaches
a JSON file (it becomes null); in CSV it appears literally as 'nan'.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from typing import Iterable

import numpy as np

SCHEMA_VERSION = "1"

BAND_HEADER = ["cell", "band_index", "kappa", "omega_re", "omega_im", "residual", "delta"]
IMPEDANCE_HEADER = ["omega_re", "omega_im", "z_re", "z_im", "abs_z", "pole_a", "pole_b", "band_a", "band_b"]
TRACE_HEADER = ["delta", "omega_re", "omega_im", "residual", "winding", "accepted"]
RASTER_HEADER = ["omega_re", "omega_im", "region"]
PROFILE_HEADER = ["x", "u_re", "u_im", "abs_u", "v_re", "v_im", "envelope"]
LATTICE_HEADER = ["n", "u_re", "u_im", "v_re", "v_im", "F"]
GAPS_HEADER = ["cell", "lo", "hi"]


def _atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _cell_str(value) -> str:
    if isinstance(value, (np.floating, np.integer, np.bool_, np.complexfloating)):
        value = value.item()
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def write_csv(path: str, header: list[str], rows: Iterable[tuple]) -> None:
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row width {len(row)} does not match header width {len(header)}")
        lines.append(",".join(_cell_str(c) for c in row))
    _atomic_write_text(path, "\n".join(lines) + "\n")


def _clean(obj):
    """Recursively make obj JSON-safe: numpy scalars to python, nan/inf to None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer, np.bool_, np.complexfloating)):
        obj = obj.item()
    if isinstance(obj, complex):
        return {"re": _clean(obj.real), "im": _clean(obj.imag)}
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def write_json(path: str, obj) -> None:
    text = json.dumps(_clean(obj), indent=2, sort_keys=True, allow_nan=False)
    _atomic_write_text(path, text + "\n")


def run_manifest(command: str, params: dict, config: dict | None = None) -> dict:
    from . import __version__

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "tool": "interface-modes",
        "version": __version__,
        "command": command,
        "params": _clean(params),
    }
    if config is not None:
        manifest["config"] = _clean(config)
    return manifest


# ---------------------------------------------------------------------------
# Payload builders
# ---------------------------------------------------------------------------


def band_rows(curves, cell_label: str):
    for curve in curves:
        for kappa, omega, resid in zip(curve.kappa, curve.omega, curve.residual):
            yield (
                cell_label,
                int(curve.band_index),
                float(kappa),
                float(np.real(omega)),
                float(np.imag(omega)),
                float(resid),
                float(curve.delta),
            )


def impedance_rows(omegas, grid):
    z = grid["z"]
    for i, w in enumerate(omegas):
        yield (
            float(np.real(w)),
            float(np.imag(w)),
            float(np.real(z[i])),
            float(np.imag(z[i])),
            float(np.abs(z[i])),
            bool(grid["pole_a"][i]),
            bool(grid["pole_b"][i]),
            bool(grid["band_a"][i]),
            bool(grid["band_b"][i]),
        )


def trace_rows(attempts):
    for a in attempts:
        yield (
            float(a.delta),
            float(np.real(a.omega)),
            float(np.imag(a.omega)),
            float(a.residual),
            None if a.winding is None else int(a.winding),
            bool(a.accepted),
        )


def raster_rows(rmap):
    region = rmap.region
    for j, im in enumerate(rmap.im):
        for i, re in enumerate(rmap.re):
            yield (float(re), float(im), str(region[j, i]))


def profile_rows(profile):
    for x, u, v, f in zip(profile.x, profile.u, profile.v, profile.envelope):
        yield (
            float(x),
            float(u.real),
            float(u.imag),
            float(abs(u)),
            float(v.real),
            float(v.imag),
            float(f),
        )


def lattice_rows(profile):
    for n, u, v, f in zip(profile.lattice_n, profile.lattice_u, profile.lattice_v, profile.lattice_F):
        yield (int(n), float(u.real), float(u.imag), float(v.real), float(v.imag), float(f))


def gaps_rows(gaps_a, gaps_b, common):
    for label, gaps in (("A", gaps_a), ("B", gaps_b), ("common", common)):
        for lo, hi in gaps:
            yield (label, float(lo), float(hi))


def contour_payload(contour) -> dict | None:
    if contour is None:
        return None
    if hasattr(contour, "radius"):
        return {
            "type": "circle",
            "center": complex(contour.center),
            "radius": float(contour.radius),
        }
    return {
        "type": "rectangle",
        "re_min": float(contour.re_min),
        "re_max": float(contour.re_max),
        "im_min": float(contour.im_min),
        "im_max": float(contour.im_max),
    }


def window_payload(window) -> dict:
    return {
        "re_min": float(window.re_min),
        "re_max": float(window.re_max),
        "im_min": float(window.im_min),
        "im_max": float(window.im_max),
        "margin": float(window.margin),
        "sample_density": int(window.sample_density),
        "delta": float(window.delta),
    }


def root_payload(root) -> dict:
    return {
        "omega": complex(root.omega),
        "residual": float(root.residual),
        "winding": None if root.winding is None else int(root.winding),
        "contour": contour_payload(root.contour),
        "delta": float(root.delta),
        "iterations": int(getattr(root, "iterations", 0)),
    }


def bulk_index_payload(index) -> dict:
    return {
        "value": int(index.value),
        "edge_omega": complex(index.edge_omega),
        "edge_kappa": float(index.edge_kappa),
        "parity_evidence": float(index.parity_evidence),
    }


def prediction_payload(prediction) -> dict:
    return {
        "predicted": bool(prediction.predicted),
        "index_A": bulk_index_payload(prediction.index_A),
        "index_B": bulk_index_payload(prediction.index_B),
    }


def decay_payload(report) -> dict:
    return {
        "ok": bool(report.ok),
        "rate_left": float(report.rate_left),
        "rate_right": float(report.rate_right),
        "max_ratio_err_value": float(report.max_ratio_err_value),
        "max_ratio_err_flux": float(report.max_ratio_err_flux),
        "bound_value": float(report.bound_value),
        "bound_flux": float(report.bound_flux),
        "n_checked": int(report.n_checked),
    }
