"""Command line front end.

Each subcommand reads the same JSON medium config, runs one analysis, and
writes deterministic files into --out-dir: identical inputs give
byte-identical outputs.  Exit codes: 0 on success (including the legitimate
'no mode predicted' outcome), 1 on domain or input errors, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (
    BandCollision,
    ConfigError,
    ContinuationBreakdown,
    Diverged,
    NoSignChange,
    NotARoot,
    ParityAmbiguous,
    PhaseRefinementExhausted,
    PoleDetected,
    PoleOnContour,
    RatioInconsistent,
    StepOutOfWindow,
    StepUnderflow,
    WindowInvaded,
)
from .floquet import GapWindow, band_curves, common_gap_window, common_real_gaps, real_gaps
from .impedance import impedance_grid
from .medium import medium_from_dict, validate_cell, with_damping
from .modes import interface_mode_profile, verify_decay
from .serialize import (
    BAND_HEADER,
    GAPS_HEADER,
    IMPEDANCE_HEADER,
    LATTICE_HEADER,
    PROFILE_HEADER,
    RASTER_HEADER,
    TRACE_HEADER,
    band_rows,
    contour_payload,
    decay_payload,
    gaps_rows,
    impedance_rows,
    lattice_rows,
    prediction_payload,
    profile_rows,
    raster_rows,
    root_payload,
    run_manifest,
    trace_rows,
    window_payload,
    write_csv,
    write_json,
)
from .spectral import (
    ContinuationAttempt,
    continuation,
    find_enclosing_contour,
    find_root_real,
    predict_interface_mode,
    rouche_map,
)

DOMAIN_ERRORS = (
    ValueError,  # includes ConfigError
    OSError,
    BandCollision,
    PoleDetected,
    ParityAmbiguous,
    RatioInconsistent,
    NoSignChange,
    PhaseRefinementExhausted,
    PoleOnContour,
    Diverged,
    StepOutOfWindow,
    StepUnderflow,
    ContinuationBreakdown,
    WindowInvaded,
    NotARoot,
)


def _read_config(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON: {e}") from e
    return raw


def _setup(args):
    raw = _read_config(args.config)
    medium = medium_from_dict(raw)
    if getattr(args, "delta", None) is not None:
        medium = medium.with_delta(args.delta)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    params = {k: v for k, v in vars(args).items() if k != "func"}
    manifest = run_manifest(args.command, params, config=raw)
    return raw, medium, out_dir, manifest


def _first_common_gap(medium, omega_max: float = 12.0) -> tuple[float, float]:
    gaps = common_real_gaps(
        real_gaps(medium.cell_A, medium.mu0, omega_max=omega_max),
        real_gaps(medium.cell_B, medium.mu0, omega_max=omega_max),
    )
    if not gaps:
        raise NoSignChange(f"the two crystals share no spectral gap below omega = {omega_max:g}")
    return gaps[0]


def _seed_interval(args, medium) -> tuple[float, float]:
    if args.seed_interval is not None:
        lo, hi = args.seed_interval
        if not hi > lo:
            raise ConfigError("--seed-interval needs lo < hi")
        return (lo, hi)
    return _first_common_gap(medium)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    raw, medium, out_dir, manifest = _setup(args)
    rep_a = validate_cell(medium.cell_A)
    rep_b = validate_cell(medium.cell_B)
    ok = rep_a.ok and rep_b.ok
    payload = {
        "manifest": manifest,
        "ok": ok,
        "cell_A": {"ok": rep_a.ok, "failures": list(rep_a.failures)},
        "cell_B": {"ok": rep_b.ok, "failures": list(rep_b.failures)},
        "mu0": medium.mu0,
        "delta": medium.delta,
    }
    write_json(out_dir / "validation.json", payload)
    if ok:
        print(f"config ok: {len(medium.cell_A.layers)} + {len(medium.cell_B.layers)} layers, mu0 = {medium.mu0:g}, delta = {medium.delta:g}")
        return 0
    for label, rep in (("cell_A", rep_a), ("cell_B", rep_b)):
        for failure in rep.failures:
            print(f"{label}: {failure}", file=sys.stderr)
    return 1


def cmd_gaps(args) -> int:
    raw, medium, out_dir, manifest = _setup(args)
    gaps_a = real_gaps(medium.cell_A, medium.mu0, omega_max=args.omega_max)
    gaps_b = real_gaps(medium.cell_B, medium.mu0, omega_max=args.omega_max)
    common = common_real_gaps(gaps_a, gaps_b)
    if args.format == "csv":
        write_csv(out_dir / "gaps.csv", GAPS_HEADER, gaps_rows(gaps_a, gaps_b, common))
        write_json(out_dir / "manifest.json", {"manifest": manifest})
    else:
        write_json(
            out_dir / "gaps.json",
            {
                "manifest": manifest,
                "gaps_A": [[lo, hi] for lo, hi in gaps_a],
                "gaps_B": [[lo, hi] for lo, hi in gaps_b],
                "common": [[lo, hi] for lo, hi in common],
            },
        )
    print(
        f"gaps below omega = {args.omega_max:g}: "
        f"A has {len(gaps_a)}, B has {len(gaps_b)}, {len(common)} in common"
    )
    return 0


def cmd_bands(args) -> int:
    raw, medium, out_dir, manifest = _setup(args)
    kappa = np.linspace(0.0, np.pi, args.kappa_points)
    curves = []
    for label, cell in (("A", medium.cell_A), ("B", medium.cell_B)):
        damped = with_damping(cell, medium.delta)
        for curve in band_curves(damped, medium.mu0, kappa, (0.0, args.omega_max)):
            curves.append((label, curve))
    if args.format == "csv":
        rows = (row for label, curve in curves for row in band_rows([curve], label))
        write_csv(out_dir / "bands.csv", BAND_HEADER, rows)
        write_json(out_dir / "manifest.json", {"manifest": manifest})
    else:
        write_json(
            out_dir / "bands.json",
            {
                "manifest": manifest,
                "bands": [
                    {
                        "cell": label,
                        "band_index": curve.band_index,
                        "delta": curve.delta,
                        "kappa": list(curve.kappa),
                        "omega": [complex(w) for w in curve.omega],
                        "residual": list(curve.residual),
                    }
                    for label, curve in curves
                ],
            },
        )
    n_bands = {label: sum(1 for l, _ in curves if l == label) for label in ("A", "B")}
    print(
        f"bands below omega = {args.omega_max:g} at delta = {medium.delta:g}: "
        f"A has {n_bands['A']}, B has {n_bands['B']}"
    )
    return 0


def cmd_impedance_scan(args) -> int:
    raw, medium, out_dir, manifest = _setup(args)
    if args.omega_min is None or args.omega_max is None:
        lo, hi = _first_common_gap(medium)
        lo = args.omega_min if args.omega_min is not None else lo
        hi = args.omega_max if args.omega_max is not None else hi
    else:
        lo, hi = args.omega_min, args.omega_max
    if not hi > lo:
        raise ConfigError("--omega-min must be below --omega-max")
    omegas = np.linspace(lo, hi, args.points) + 1j * args.imag
    grid = impedance_grid(medium, omegas)
    if args.format == "csv":
        write_csv(out_dir / "impedance.csv", IMPEDANCE_HEADER, impedance_rows(omegas, grid))
        write_json(out_dir / "manifest.json", {"manifest": manifest})
    else:
        write_json(
            out_dir / "impedance.json",
            {
                "manifest": manifest,
                "omega": [complex(w) for w in omegas],
                "z": [complex(z) for z in grid["z"]],
                "pole_a": grid["pole_a"].tolist(),
                "pole_b": grid["pole_b"].tolist(),
                "band_a": grid["band_a"].tolist(),
                "band_b": grid["band_b"].tolist(),
            },
        )
    n_ok = int(np.sum(~(grid["pole_a"] | grid["pole_b"] | grid["band_a"] | grid["band_b"])))
    print(f"impedance sampled at {args.points} points in [{lo:g}, {hi:g}] + {args.imag:g}i ({n_ok} clean)")
    return 0


def _locate_root(medium, seed, tol, initial_step, attempts=None):
    """Root at the medium's delta: bracketed bisection at 0, continuation above."""
    if medium.delta == 0:
        root = find_root_real(medium.with_delta(0.0), seed, tol=tol)
        if attempts is not None:
            attempts.append(ContinuationAttempt(0.0, root.omega, root.residual, root.winding, True))
        return root
    path = continuation(
        medium.with_delta,
        medium.delta,
        initial_step=initial_step,
        tol=tol,
        seed_interval=seed,
        attempts=attempts,
    )
    return path[-1]


def cmd_find_mode(args) -> int:
    raw, medium, out_dir, manifest = _setup(args)
    seed = _seed_interval(args, medium)
    prediction = predict_interface_mode(medium.cell_A, medium.cell_B, medium.mu0, seed)
    payload = {"manifest": manifest, "prediction": prediction_payload(prediction), "seed_interval": list(seed)}
    if not prediction.predicted:
        payload["root"] = None
        payload["trace"] = []
        write_json(out_dir / "mode.json", payload)
        print(
            "no interface mode predicted: edge indices "
            f"{prediction.index_A.value:+d} and {prediction.index_B.value:+d} do not cancel"
        )
        return 0
    attempts: list = []
    root = _locate_root(medium, seed, args.tol, args.initial_step, attempts)
    payload["root"] = root_payload(root)
    payload["trace"] = [
        {
            "delta": a.delta,
            "omega": complex(a.omega),
            "residual": a.residual,
            "winding": a.winding,
            "accepted": a.accepted,
        }
        for a in attempts
    ]
    write_json(out_dir / "mode.json", payload)
    if args.format == "csv":
        write_csv(out_dir / "trace.csv", TRACE_HEADER, trace_rows(attempts))
    print(
        f"interface mode at omega = {root.omega.real:.12g}{root.omega.imag:+.12g}i "
        f"(delta = {root.delta:g}, residual {root.residual:.3g}, winding {root.winding})"
    )
    return 0


def cmd_rouche_map(args) -> int:
    raw, medium, out_dir, manifest = _setup(args)
    if args.delta1 < 0 or args.delta2 < 0:
        raise ConfigError("damping values must be >= 0")
    if args.seed_interval is not None:
        seed = tuple(args.seed_interval)
    else:
        lo, hi = _first_common_gap(medium)
        pad = args.pad * (hi - lo)
        seed = (lo + pad, hi - pad)
    windows = [
        common_gap_window(
            medium.cell_A, medium.cell_B, medium.mu0, d, seed, args.im_halfwidth
        )
        for d in sorted({args.delta1, args.delta2})
    ]
    window = GapWindow(
        re_min=windows[0].re_min,
        re_max=windows[0].re_max,
        im_min=windows[0].im_min,
        im_max=windows[0].im_max,
        margin=min(w.margin for w in windows),
        sample_density=windows[0].sample_density,
        delta=max(args.delta1, args.delta2),
    )
    rmap = rouche_map(
        medium.with_delta(args.delta1),
        medium.with_delta(args.delta2),
        window,
        resolution=args.resolution,
        tie_tol=args.tie_tol,
    )
    circle = find_enclosing_contour(rmap)
    counts = {
        "c": int(np.sum(rmap.region == "c")),
        "w": int(np.sum(rmap.region == "w")),
        "pole": int(np.sum(rmap.region == "pole")),
    }
    payload = {
        "manifest": manifest,
        "window": window_payload(window),
        "delta_1": rmap.delta_1,
        "delta_2": rmap.delta_2,
        "omega_1": complex(rmap.omega_1),
        "omega_2": complex(rmap.omega_2),
        "root_1": {"region": rmap.root_1.region, "lhs": rmap.root_1.lhs, "rhs": rmap.root_1.rhs},
        "root_2": {"region": rmap.root_2.region, "lhs": rmap.root_2.lhs, "rhs": rmap.root_2.rhs},
        "counts": counts,
        "enclosing_circle": contour_payload(circle),
        "tie_tol": rmap.tie_tol,
    }
    if args.format == "csv":
        write_csv(out_dir / "raster.csv", RASTER_HEADER, raster_rows(rmap))
    else:
        payload["raster"] = {
            "re": list(rmap.re),
            "im": list(rmap.im),
            "rows": ["".join("p" if r == "pole" else r for r in row) for row in rmap.region],
        }
    write_json(out_dir / "rouche.json", payload)
    frac = counts["c"] / rmap.region.size
    circ = (
        f"enclosing circle radius {circle.radius:.6g}" if circle is not None else "no enclosing circle found"
    )
    print(
        f"rouche map {args.resolution}x{args.resolution} for delta {args.delta1:g} vs {args.delta2:g}: "
        f"{100 * frac:.1f}% strong region; roots in '{rmap.root_1.region}'/'{rmap.root_2.region}'; {circ}"
    )
    return 0


def cmd_mode_profile(args) -> int:
    raw, medium, out_dir, manifest = _setup(args)
    if (args.omega_re is None) != (args.omega_im is None):
        raise ConfigError("--omega-re and --omega-im must be given together")
    payload = {"manifest": manifest}
    if args.omega_re is not None:
        root = complex(args.omega_re, args.omega_im)
        payload["root"] = {"omega": root, "residual": None, "winding": None, "contour": None, "delta": medium.delta, "iterations": 0}
    else:
        seed = _seed_interval(args, medium)
        prediction = predict_interface_mode(medium.cell_A, medium.cell_B, medium.mu0, seed)
        payload["prediction"] = prediction_payload(prediction)
        if not prediction.predicted:
            payload["root"] = None
            write_json(out_dir / "mode_profile.json", payload)
            print("no interface mode predicted; nothing to profile")
            return 0
        root = _locate_root(medium, seed, args.tol, args.initial_step)
        payload["root"] = root_payload(root)
    profile = interface_mode_profile(
        medium, root, n_cells=args.cells, samples_per_cell=args.samples, root_tol=args.root_tol
    )
    report = verify_decay(profile)
    payload["omega"] = complex(profile.omega)
    payload["rate_left"] = profile.rate_left
    payload["rate_right"] = profile.rate_right
    payload["impedance_residual"] = profile.impedance_residual
    payload["pairing_residual"] = profile.pairing_residual
    payload["decay"] = decay_payload(report)
    if args.format == "csv":
        write_csv(out_dir / "profile.csv", PROFILE_HEADER, profile_rows(profile))
        write_csv(out_dir / "lattice.csv", LATTICE_HEADER, lattice_rows(profile))
    else:
        payload["profile"] = [
            {"x": float(x), "u": complex(u), "v": complex(v), "envelope": float(f)}
            for x, u, v, f in zip(profile.x, profile.u, profile.v, profile.envelope)
        ]
        payload["lattice"] = [
            {"n": int(n), "u": complex(u), "v": complex(v), "F": float(f)}
            for n, u, v, f in zip(profile.lattice_n, profile.lattice_u, profile.lattice_v, profile.lattice_F)
        ]
    write_json(out_dir / "mode_profile.json", payload)
    print(
        f"profile over {2 * args.cells} cells at omega = {profile.omega.real:.12g}{profile.omega.imag:+.12g}i: "
        f"rates {profile.rate_left:.6g} / {profile.rate_right:.6g}, decay check "
        + ("ok" if report.ok else "FAILED")
    )
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interface-modes",
        description="Spectral analysis of an interface between two 1-D layered crystals.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, delta=True):
        p.add_argument("config", help="JSON medium description")
        p.add_argument("--out-dir", default=".", help="directory for output files (default: .)")
        p.add_argument("--format", choices=("csv", "json"), default="csv", help="output style (default: csv)")
        if delta:
            p.add_argument("--delta", type=float, default=None, help="override the config's damping")

    p = sub.add_parser("validate", help="check a medium config and report all problems")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gaps", help="real spectral gaps of each crystal and their intersection")
    add_common(p, delta=False)
    p.add_argument("--omega-max", type=float, default=12.0, help="scan ceiling (default: 12)")
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("bands", help="band curves omega(kappa) of both crystals")
    add_common(p)
    p.add_argument("--omega-max", type=float, default=12.0, help="seed window ceiling (default: 12)")
    p.add_argument("--kappa-points", type=int, default=101, help="kappa grid size on [0, pi] (default: 101)")
    p.set_defaults(func=cmd_bands)

    p = sub.add_parser("impedance-scan", help="interface impedance along a frequency line")
    add_common(p)
    p.add_argument("--omega-min", type=float, default=None, help="scan start (default: first common gap)")
    p.add_argument("--omega-max", type=float, default=None, help="scan end (default: first common gap)")
    p.add_argument("--points", type=int, default=2001, help="number of samples (default: 2001)")
    p.add_argument("--imag", type=float, default=0.0, help="imaginary offset of the scan line (default: 0)")
    p.set_defaults(func=cmd_impedance_scan)

    p = sub.add_parser("find-mode", help="predict and locate the interface mode in a gap")
    add_common(p)
    p.add_argument("--seed-interval", type=float, nargs=2, metavar=("LO", "HI"), default=None,
                   help="real interval to search (default: first common gap)")
    p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance on |Z| (default: 1e-10)")
    p.add_argument("--initial-step", type=float, default=0.05, help="first damping step (default: 0.05)")
    p.set_defaults(func=cmd_find_mode)

    p = sub.add_parser("rouche-map", help="compare the roots of two dampings over a certified window")
    add_common(p, delta=False)
    p.add_argument("--delta1", type=float, default=0.0, help="first damping (default: 0)")
    p.add_argument("--delta2", type=float, required=True, help="second damping")
    p.add_argument("--resolution", type=int, default=200, help="raster resolution per axis (default: 200)")
    p.add_argument("--im-halfwidth", type=float, default=0.25, help="window height above/below the axis (default: 0.25)")
    p.add_argument("--pad", type=float, default=0.02, help="fractional gap shrink for the window (default: 0.02)")
    p.add_argument("--seed-interval", type=float, nargs=2, metavar=("LO", "HI"), default=None,
                   help="real extent of the window (default: padded first common gap)")
    p.add_argument("--tie-tol", type=float, default=1e-9, help="comparison tie tolerance (default: 1e-9)")
    p.set_defaults(func=cmd_rouche_map)

    p = sub.add_parser("mode-profile", help="synthesize and verify the bound state at a root")
    add_common(p)
    p.add_argument("--omega-re", type=float, default=None, help="known root, real part")
    p.add_argument("--omega-im", type=float, default=None, help="known root, imaginary part")
    p.add_argument("--seed-interval", type=float, nargs=2, metavar=("LO", "HI"), default=None,
                   help="real interval to search when no root is given")
    p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance on |Z| (default: 1e-10)")
    p.add_argument("--initial-step", type=float, default=0.05, help="first damping step (default: 0.05)")
    p.add_argument("--cells", type=int, default=10, help="cells per side (default: 10)")
    p.add_argument("--samples", type=int, default=64, help="samples per cell (default: 64)")
    p.add_argument("--root-tol", type=float, default=1e-8, help="acceptance threshold on |Z| (default: 1e-8)")
    p.set_defaults(func=cmd_mode_profile)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
