"""Command line front end: temperature sweeps, scans, and verification.

Subcommands
-----------
``thermo sheet``
    Sweep the sheet model over parameters and a log temperature grid and
    write one CSV row per (parameter point, T) with subtracted per-part
    free energies and entropies.
``thermo slab``
    Same for the slab model; optionally writes the surface-plasmon
    dispersion to a separate CSV (the dispersion is reported only, it is
    not part of the thermodynamic totals).
``thermo scan``
    Scan the sheet resonance frequency for the negative-entropy window:
    per omega0, the high-T log coefficient and the minimum of S_total
    over the T grid.
``thermo verify``
    Run acceptance-check suites; JSON lines on stdout, human summary on
    stderr, exit status 1 if any check fails.

All numeric output is formatted with 12 significant digits and repeat
runs with identical flags produce bit-identical files.  A ``--config``
JSON file may hold any long-flag values; explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import plasma_sheet, slab, verification
from .numkernel import ErrorTracker, QuadratureError, QuadSettings

__all__ = ["main"]

SHEET_PARTS = ("TE", "TM", "sf")
SLAB_PARTS = ("s", "L", "exp")

SHEET_HEADER = ("Omega0", "omega0", "T",
                "F_TE_subtr", "S_TE_subtr", "F_TM_subtr", "S_TM_subtr",
                "F_sf_subtr", "S_sf_subtr", "F_total", "S_total",
                "quad_error")
SLAB_HEADER = ("omega_p", "L", "T",
               "F_s_TE_subtr", "S_s_TE_subtr", "F_s_TM_subtr", "S_s_TM_subtr",
               "F_L_TE", "S_L_TE", "F_L_TM", "S_L_TM",
               "F_exp_subtr", "S_exp_subtr", "F_total", "S_total",
               "quad_error")
SCAN_HEADER = ("Omega0", "omega0", "c_logT", "S_total_min", "T_at_min",
               "quad_error")
PLASMON_HEADER = ("omega_p", "L", "k", "omega_sf", "residual",
                  "included_in_totals")


def _fmt(x):
    if isinstance(x, str):
        return x
    if not math.isfinite(x):
        return "nan"
    return format(x, ".12e")


def _parse_range(text, name, parser):
    """Parse "V" or "MIN:MAX:STEPS[:log]" into a tuple of floats."""
    parts = str(text).split(":")
    try:
        if len(parts) == 1:
            return (float(parts[0]),)
        if len(parts) in (3, 4):
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
            if n < 1 or hi < lo:
                raise ValueError
            if len(parts) == 4:
                if parts[3] != "log":
                    raise ValueError
                if lo <= 0.0:
                    raise ValueError
                return tuple(np.geomspace(lo, hi, n))
            return tuple(np.linspace(lo, hi, n))
    except (ValueError, TypeError):
        pass
    parser.error(
        f"bad range for {name}: {text!r} (want V or MIN:MAX:STEPS[:log])")


def _temperature_grid(args, parser):
    if args.tmin <= 0.0 or args.tmax < args.tmin:
        parser.error("temperature grid requires 0 < tmin <= tmax")
    if args.tmin == args.tmax:
        return (args.tmin,)
    decades = math.log10(args.tmax / args.tmin)
    n = int(round(args.tpts * decades)) + 1
    if n < 2:
        parser.error("empty temperature grid (raise --tpts)")
    return tuple(np.geomspace(args.tmin, args.tmax, n))


def _parse_parts(text, valid, parser):
    parts = tuple(p.strip() for p in text.split(",") if p.strip())
    for p in parts:
        if p not in valid:
            parser.error(f"unknown part {p!r}; valid parts: {','.join(valid)}")
    if not parts:
        parser.error("empty --parts")
    return parts


def _settings(rel_tol, abs_tol):
    return QuadSettings(rel_tol=rel_tol, abs_tol=abs_tol,
                        error_tracker=ErrorTracker())


# ---------------------------------------------------------------------------
# row workers (module level so they pickle for --jobs)
# ---------------------------------------------------------------------------

def _sheet_row(task):
    Omega0, omega0, T, rel_tol, abs_tol, parts = task
    settings = _settings(rel_tol, abs_tol)
    params = plasma_sheet.SheetParams(Omega0=Omega0, omega0=omega0)
    vals = {name: float("nan") for name in SHEET_HEADER[3:-1]}
    try:
        if set(parts) == set(SHEET_PARTS):
            bd = plasma_sheet.total(T, params, settings)
            vals.update(F_TE_subtr=bd.F_TE, S_TE_subtr=bd.S_TE,
                        F_TM_subtr=bd.F_TM, S_TM_subtr=bd.S_TM,
                        F_sf_subtr=bd.F_sf, S_sf_subtr=bd.S_sf,
                        F_total=bd.F_total, S_total=bd.S_total)
        else:
            for p in parts:
                if p == "sf":
                    vals["F_sf_subtr"] = plasma_sheet.plasmon_free_energy_subtr(
                        T, params, settings)
                    vals["S_sf_subtr"] = plasma_sheet.plasmon_entropy_subtr(
                        T, params, settings)
                else:
                    vals[f"F_{p}_subtr"] = plasma_sheet.free_energy_channel(
                        p, T, params, settings)
                    vals[f"S_{p}_subtr"] = plasma_sheet.entropy_channel(
                        p, T, params, settings)
        err = _fmt(settings.error_tracker.worst)
    except QuadratureError:
        vals = {name: float("nan") for name in SHEET_HEADER[3:-1]}
        err = "failed"
    row = [_fmt(Omega0), _fmt(omega0), _fmt(T)]
    row += [_fmt(vals[name]) for name in SHEET_HEADER[3:-1]]
    row.append(err)
    return row


def _slab_row(task):
    omega_p, L, T, rel_tol, abs_tol, parts = task
    settings = _settings(rel_tol, abs_tol)
    params = slab.SlabParams(omega_p=omega_p, L=L)
    vals = {name: float("nan") for name in SLAB_HEADER[3:-1]}
    try:
        if set(parts) == set(SLAB_PARTS):
            bd = slab.total(T, params, settings)
            vals.update(F_s_TE_subtr=bd.F_s_TE, S_s_TE_subtr=bd.S_s_TE,
                        F_s_TM_subtr=bd.F_s_TM, S_s_TM_subtr=bd.S_s_TM,
                        F_L_TE=bd.F_L_TE, S_L_TE=bd.S_L_TE,
                        F_L_TM=bd.F_L_TM, S_L_TM=bd.S_L_TM,
                        F_exp_subtr=bd.F_exp, S_exp_subtr=bd.S_exp,
                        F_total=bd.F_total, S_total=bd.S_total)
        else:
            if "s" in parts:
                vals["F_s_TE_subtr"] = slab.F_s_TE_subtr(T, params, settings)
                vals["S_s_TE_subtr"] = slab.S_s_TE_subtr(T, params, settings)
                vals["F_s_TM_subtr"] = slab.F_s_TM_subtr(T, params, settings)
                vals["S_s_TM_subtr"] = slab.S_s_TM_subtr(T, params, settings)
            if "L" in parts:
                vals["F_L_TE"] = slab.F_L_TE(T, params, settings)
                vals["S_L_TE"] = slab.S_L("TE", T, params, settings)
                vals["F_L_TM"] = slab.F_L_TM(T, params, settings)
                vals["S_L_TM"] = slab.S_L("TM", T, params, settings)
            if "exp" in parts:
                vals["F_exp_subtr"] = slab.F_exp_subtr(T, params, settings)
                vals["S_exp_subtr"] = slab.S_exp_subtr(T, params, settings)
        err = _fmt(settings.error_tracker.worst)
    except QuadratureError:
        vals = {name: float("nan") for name in SLAB_HEADER[3:-1]}
        err = "failed"
    row = [_fmt(omega_p), _fmt(L), _fmt(T)]
    row += [_fmt(vals[name]) for name in SLAB_HEADER[3:-1]]
    row.append(err)
    return row


def _scan_row(task):
    Omega0, omega0, t_grid, rel_tol, abs_tol = task
    settings = _settings(rel_tol, abs_tol)
    params = plasma_sheet.SheetParams(Omega0=Omega0, omega0=omega0)
    try:
        c = plasma_sheet.high_T_log_coefficient(params, settings)
        s_min, t_at = math.inf, float("nan")
        for T in t_grid:
            s = plasma_sheet.total(T, params, settings).S_total
            if s < s_min:
                s_min, t_at = s, T
        err = _fmt(settings.error_tracker.worst)
        return [_fmt(Omega0), _fmt(omega0), _fmt(c), _fmt(s_min),
                _fmt(t_at), err]
    except QuadratureError:
        return [_fmt(Omega0), _fmt(omega0), "nan", "nan", "nan", "failed"]


def _plasmon_row(task):
    omega_p, L, k = task
    params = slab.SlabParams(omega_p=omega_p, L=L)
    try:
        w = slab.plasmon_dispersion(k, params)
        res = slab.plasmon_mode_residual(w, k, params)
        return [_fmt(omega_p), _fmt(L), _fmt(k), _fmt(w), _fmt(res), "no"]
    except QuadratureError:
        return [_fmt(omega_p), _fmt(L), _fmt(k), "nan", "nan", "no"]


def _run_tasks(worker, tasks, jobs):
    if jobs <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks, chunksize=1))


def _write_csv(path, header, rows):
    if path == "-":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _note(msg):
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommand drivers
# ---------------------------------------------------------------------------

def _cmd_sheet(args, parser):
    t_grid = _temperature_grid(args, parser)
    parts = _parse_parts(args.parts, SHEET_PARTS, parser)
    omegas0 = _parse_range(args.omega0, "--omega0", parser)
    Omegas0 = _parse_range(args.Omega0, "--Omega0", parser)
    tasks = [(O0, w0, T, args.rel_tol, args.abs_tol, parts)
             for O0 in Omegas0 for w0 in omegas0 for T in t_grid]
    rows = _run_tasks(_sheet_row, tasks, args.jobs)
    _write_csv(args.out, SHEET_HEADER, rows)
    s = args.scale
    _note(f"sheet sweep: {len(rows)} rows "
          f"({len(Omegas0)} x {len(omegas0)} parameter points, "
          f"{len(t_grid)} temperatures, "
          f"T in [{t_grid[0] * s:g}, {t_grid[-1] * s:g}])")
    return 0


def _cmd_slab(args, parser):
    t_grid = _temperature_grid(args, parser)
    parts = _parse_parts(args.parts, SLAB_PARTS, parser)
    omegas_p = _parse_range(args.omegap, "--omegap", parser)
    lengths = _parse_range(args.L, "--L", parser)
    tasks = [(wp, L, T, args.rel_tol, args.abs_tol, parts)
             for wp in omegas_p for L in lengths for T in t_grid]
    rows = _run_tasks(_slab_row, tasks, args.jobs)
    _write_csv(args.out, SLAB_HEADER, rows)
    s = args.scale
    _note(f"slab sweep: {len(rows)} rows "
          f"({len(omegas_p)} x {len(lengths)} parameter points, "
          f"{len(t_grid)} temperatures, "
          f"T in [{t_grid[0] * s:g}, {t_grid[-1] * s:g}])")
    if args.plasmon_out:
        if args.kmin <= 0.0 or args.kmax < args.kmin or args.kpts < 1:
            parser.error("plasmon grid requires 0 < kmin <= kmax, kpts >= 1")
        k_grid = (np.geomspace(args.kmin, args.kmax, args.kpts)
                  if args.kpts > 1 else np.array([args.kmin]))
        ptasks = [(wp, L, float(k))
                  for wp in omegas_p for L in lengths for k in k_grid]
        prows = _run_tasks(_plasmon_row, ptasks, args.jobs)
        _write_csv(args.plasmon_out, PLASMON_HEADER, prows)
        _note("plasmon dispersion written: NOT included in the "
              "thermodynamic totals (reported for reference only)")
    return 0


def _cmd_scan(args, parser):
    t_grid = _temperature_grid(args, parser)
    omegas0 = _parse_range(args.omega0, "--omega0", parser)
    Omega0 = args.Omega0
    tasks = [(Omega0, w0, t_grid, args.rel_tol, args.abs_tol)
             for w0 in omegas0]
    rows = _run_tasks(_scan_row, tasks, args.jobs)
    _write_csv(args.out, SCAN_HEADER, rows)

    neg_c = [float(r[1]) for r in rows if r[2] != "nan" and float(r[2]) < 0.0]
    neg_s = [(float(r[1]), float(r[4])) for r in rows
             if r[3] != "nan" and float(r[3]) < 0.0]
    if neg_c:
        _note(f"high-T log coefficient negative for omega0 in "
              f"[{min(neg_c):g}, {max(neg_c):g}] "
              f"(expected window starts at Omega0/sqrt(2) ~ "
              f"{Omega0 / math.sqrt(2.0):.6g})")
    else:
        _note("high-T log coefficient nonnegative over the scanned range")
    if neg_s:
        w_lo = min(w for w, _ in neg_s)
        w_hi = max(w for w, _ in neg_s)
        _note(f"S_total < 0 found for omega0 in [{w_lo:g}, {w_hi:g}] "
              f"({len(neg_s)} of {len(rows)} scanned points)")
    else:
        _note("S_total >= 0 at every scanned point")
    return 0


def _cmd_verify(args, parser):
    suites = args.suites or ["all"]
    for s in suites:
        if s != "all" and s not in verification.SUITES:
            parser.error(f"unknown suite {s!r}; valid: "
                         f"{', '.join(verification.SUITES)}, all")
    if "all" in suites:
        suites = list(verification.SUITES)
    settings = QuadSettings(rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    results = []
    for suite in suites:
        results.extend(verification.run_suite(suite, settings))
    for r in results:
        measured = r.measured if math.isfinite(r.measured) else "nan"
        expected = r.expected
        if isinstance(expected, float) and not math.isfinite(expected):
            expected = "nan"
        print(json.dumps({"suite": r.suite, "check": r.check,
                          "expected": expected, "measured": measured,
                          "tolerance": r.tolerance, "pass": r.passed},
                         allow_nan=False))
    _note(verification.summarize(results))
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------

def _add_common(sub, defaults):
    sub.add_argument("--tmin", type=float, default=1e-2,
                     help="lowest temperature (default 1e-2)")
    sub.add_argument("--tmax", type=float, default=1e2,
                     help="highest temperature (default 1e2)")
    sub.add_argument("--tpts", type=float, default=8.0,
                     help="temperature points per decade, log grid")
    sub.add_argument("--out", default="-",
                     help="output CSV path, '-' for stdout")
    sub.add_argument("--jobs", type=int, default=1,
                     help="worker processes (default 1)")
    sub.add_argument("--rel-tol", type=float, default=1e-9,
                     dest="rel_tol", help="quadrature relative tolerance")
    sub.add_argument("--abs-tol", type=float, default=1e-12,
                     dest="abs_tol", help="quadrature absolute tolerance")
    sub.add_argument("--scale", type=float, default=1.0,
                     help="frequency unit for labels only; never enters "
                          "the computation")
    sub.add_argument("--config", default=None,
                     help="JSON file of flag defaults (explicit flags win)")
    if defaults:
        known = {a.dest for a in sub._actions}
        sub.set_defaults(**{k: v for k, v in defaults.items() if k in known})


def _peek_config(argv):
    cfg = {}
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
        else:
            continue
        with open(path) as fh:
            cfg = json.load(fh)
    return cfg


def _build_parser(defaults):
    parser = argparse.ArgumentParser(
        prog="thermo",
        description="Finite-temperature Casimir free energy and entropy "
                    "for a plasma sheet and a dielectric slab.")
    subs = parser.add_subparsers(dest="command", required=True)

    sheet = subs.add_parser("sheet", help="sweep the sheet model")
    sheet.add_argument("--Omega0", default="1.0",
                       help="plasma strength, value or MIN:MAX:STEPS[:log]")
    sheet.add_argument("--omega0", default="0.0",
                       help="resonance frequency, value or range")
    sheet.add_argument("--parts", default="TE,TM,sf",
                       help="comma list from {TE,TM,sf}")
    _add_common(sheet, defaults)
    sheet.set_defaults(driver=_cmd_sheet)

    slab_p = subs.add_parser("slab", help="sweep the slab model")
    slab_p.add_argument("--omegap", default="1.0",
                        help="plasma frequency, value or range")
    slab_p.add_argument("--L", default="1.0",
                        help="slab thickness, value or range")
    slab_p.add_argument("--parts", default="s,L,exp",
                        help="comma list from {s,L,exp}")
    slab_p.add_argument("--plasmon-out", default=None, dest="plasmon_out",
                        help="also write the (k, omega_sf) dispersion CSV "
                             "(not part of the totals)")
    slab_p.add_argument("--kmin", type=float, default=0.1)
    slab_p.add_argument("--kmax", type=float, default=10.0)
    slab_p.add_argument("--kpts", type=int, default=64)
    _add_common(slab_p, defaults)
    slab_p.set_defaults(driver=_cmd_slab)

    scan = subs.add_parser("scan",
                           help="scan omega0 for the negative-entropy window")
    scan.add_argument("--Omega0", type=float, default=1.0)
    scan.add_argument("--omega0", default="0.6:0.95:71",
                      help="omega0 range (default 0.6:0.95:71)")
    _add_common(scan, defaults)
    scan.set_defaults(tmax=1e3, tpts=32.0)
    if defaults:
        known = {a.dest for a in scan._actions}
        scan.set_defaults(**{k: v for k, v in defaults.items() if k in known})
    scan.set_defaults(driver=_cmd_scan)

    verify = subs.add_parser("verify", help="run acceptance-check suites")
    verify.add_argument("suites", nargs="*",
                        help="suites to run from {%s, all} (default: all)"
                             % ", ".join(verification.SUITES))
    verify.add_argument("--rel-tol", type=float, default=1e-9, dest="rel_tol")
    verify.add_argument("--abs-tol", type=float, default=1e-12,
                        dest="abs_tol")
    verify.add_argument("--config", default=None)
    if defaults:
        known = {a.dest for a in verify._actions}
        verify.set_defaults(**{k: v for k, v in defaults.items()
                               if k in known})
    verify.set_defaults(driver=_cmd_verify)
    return parser


def main(argv=None):
    """Entry point for the ``thermo`` console script."""
    argv = list(sys.argv[1:] if argv is None else argv)
    defaults = _peek_config(argv)
    parser = _build_parser(defaults)
    args = parser.parse_args(argv)
    return args.driver(args, parser)


if __name__ == "__main__":
    sys.exit(main())
