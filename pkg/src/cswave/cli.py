"""Command line front end.

Four subcommands: ``simulate`` integrates one system and journals the
canonical observables, ``verify`` runs the standalone numerical checks,
``picard`` reports iteration differences, and ``report`` aggregates a run
directory (or executes the full acceptance suite into one).

Every producing command writes CSV journals plus a shared ``manifest.json``
in the output directory. Journal file names carry a hash of the resolved
parameters, so reruns with the same configuration overwrite byte-identical
files while different configurations never collide. Timestamps live only in
the manifest.

Exit codes: 0 success, 2 validation error, 3 blowup, 4 a quantitative gate
failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from configparser import ConfigParser, Error as ConfigError

from . import acceptance
from . import experiments as exp
from .coneintegrals import delta_convolution_integral
from .errors import (
    BlowupError,
    ConstraintViolationError,
    ContradictionError,
    QuadratureError,
    ResourceError,
    UsageError,
)
from .evolve import IntegratorConfig, PicardConfig
from .io import (
    file_sha256,
    load_baselines,
    read_journal,
    read_manifest,
    save_snapshot,
    write_journal,
    write_manifest,
)
from .grid import DEFAULT_LENGTH
from .norms import FLParams, contraction_parameters, critical_exponent

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BLOWUP = 3
EXIT_ACCEPTANCE = 4

_BOOLS = {"true": True, "false": False, "yes": True, "no": False, "1": True, "0": False}

_COLUMNS_HELP = f"""journal columns (frozen per major version):
  csh timeseries : {", ".join(exp.CSH_COLUMNS)}
  csd timeseries : {", ".join(exp.CSD_COLUMNS)}
  picard         : iteration, difference, ratio
  nullform scans : scan index, sup, baseline, drift
  integrals      : tau, quadrature, closed_form, rel_error
  acceptance     : id, passed, seconds
"""


def _parse_bool(raw: str) -> bool:
    key = raw.strip().lower()
    if key not in _BOOLS:
        raise ValueError(raw)
    return _BOOLS[key]


def _parse_pair(raw: str) -> tuple:
    parts = [p for p in raw.replace(",", " ").split() if p]
    if len(parts) != 2:
        raise ValueError(raw)
    return (float(parts[0]), float(parts[1]))


def _read_config_file(path: str) -> dict:
    parser = ConfigParser()
    try:
        found = parser.read(path)
    except ConfigError as err:
        raise UsageError(f"config file {path!r}: {err}") from None
    if not found:
        raise UsageError(f"config file {path!r} not found")
    flat = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            flat[f"{section}.{key}"] = value
    return flat


def _setting(flat: dict, cli_value, key: str, cast, default):
    """Merge order: command-line flag, then config file, then default."""
    if cli_value is not None:
        return cli_value
    if key in flat:
        raw = flat[key]
        try:
            return cast(raw)
        except (ValueError, TypeError):
            raise UsageError(f"invalid value for {key}: {raw!r}") from None
    return default


def _config_hash(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def _ensure_outdir(outdir: str) -> str:
    os.makedirs(outdir, exist_ok=True)
    if not os.access(outdir, os.W_OK):
        raise UsageError(f"output directory {outdir!r} is not writable")
    return outdir


def _append_run(outdir: str, entry: dict) -> None:
    """Record one run in manifest.json, replacing any run of the same
    command and configuration so reruns stay idempotent."""
    path = os.path.join(outdir, "manifest.json")
    runs = []
    if os.path.exists(path):
        runs = read_manifest(path).get("runs", [])
    key = (entry.get("command"), entry.get("config_hash"))
    runs = [r for r in runs if (r.get("command"), r.get("config_hash")) != key]
    runs.append(entry)
    write_manifest(path, {"runs": runs})


def _print_table(header, rows) -> None:
    cols = [list(map(str, row)) for row in ([header] + [list(r) for r in rows])]
    widths = [max(len(line[i]) for line in cols) for i in range(len(header))]
    for line in cols:
        print("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())


# -- simulate -----------------------------------------------------------------


def _experiment_config(args) -> exp.ExperimentConfig:
    flat = _read_config_file(args.config) if args.config else {}
    system = args.system
    n = _setting(flat, args.n, "experiment.n", int, 32)
    length = _setting(flat, args.length, "experiment.length", float, DEFAULT_LENGTH)
    kappa = _setting(flat, args.kappa, "experiment.kappa", float, 1.0)
    mass = _setting(flat, args.mass, "experiment.mass", float, 0.0)
    massive = _setting(flat, args.massive, "experiment.massive", _parse_bool, True)
    potential = _setting(flat, args.potential, "experiment.potential", str, "self-dual")
    constraint = _setting(flat, args.constraint, "experiment.constraint", str, "project")
    recipe = exp.DataRecipe(
        name=_setting(flat, args.recipe, "recipe.name", str, "annulus-spectrum"),
        amplitude=_setting(flat, args.amp, "recipe.amplitude", float, 0.05),
        seed=_setting(flat, args.seed, "recipe.seed", int, 0),
        band=_setting(flat, args.band, "recipe.band", _parse_pair, (2.0, 4.0)),
        mode=_setting(flat, args.mode, "recipe.mode", _parse_pair, (2, 1)),
        sigma=_setting(flat, args.sigma, "recipe.sigma", float, None),
    )
    integrator = IntegratorConfig(
        dt=_setting(flat, args.dt, "integrator.dt", float, 1e-3),
        T=_setting(flat, args.T, "integrator.t", float, 1.0),
        scheme=_setting(flat, args.scheme, "integrator.scheme", str, "etd-midpoint"),
        snapshot_stride=_setting(flat, args.stride, "integrator.stride", int, 20),
    )
    fl_r = _setting(flat, None, "fl.r", float, 2.0)
    fl_s = _setting(flat, None, "fl.s", float, 0.75)
    margin = _setting(flat, args.margin, "fl.margin", float, 0.01)
    if args.theorem_compliant:
        preset = contraction_parameters(fl_r, margin)
        fl_s = preset.s
    outdir = _setting(flat, args.outdir, "experiment.outdir", str, ".")
    return exp.ExperimentConfig(
        system=system,
        n=n,
        length=length,
        kappa=kappa,
        mass=mass,
        massive=massive,
        potential=potential,
        constraint=constraint,
        recipe=recipe,
        integrator=integrator,
        fl=FLParams(s=fl_s, r=fl_r),
        outdir=outdir,
    )


def _config_payload(cfg: exp.ExperimentConfig) -> dict:
    return {
        "system": cfg.system,
        "n": cfg.n,
        "length": cfg.length,
        "kappa": cfg.kappa,
        "mass": cfg.mass,
        "massive": cfg.massive,
        "potential": cfg.potential,
        "constraint": cfg.constraint,
        "recipe": {
            "name": cfg.recipe.name,
            "amplitude": cfg.recipe.amplitude,
            "seed": cfg.recipe.seed,
            "band": list(cfg.recipe.band),
            "mode": list(cfg.recipe.mode),
            "sigma": cfg.recipe.sigma,
        },
        "integrator": {
            "dt": cfg.integrator.dt,
            "T": cfg.integrator.T,
            "scheme": cfg.integrator.scheme,
            "stride": cfg.integrator.snapshot_stride,
        },
        "fl": {"s": cfg.fl.s, "r": cfg.fl.r},
    }


def cmd_simulate(args) -> int:
    cfg = _experiment_config(args)
    payload = _config_payload(cfg)
    chash = _config_hash(payload)
    outdir = _ensure_outdir(cfg.outdir)

    result = exp.run_simulation(cfg)
    journal = f"{cfg.system}-{chash[:8]}.csv"
    jpath = os.path.join(outdir, journal)
    write_journal(jpath, result.header, result.rows)

    snapshot = f"{cfg.system}-{chash[:8]}-final.npz"
    system = exp.build_system(cfg)
    save_snapshot(os.path.join(outdir, snapshot), system, result.state)

    col = result.header.index("gauge_residual")
    worst = max(row[col] for row in result.rows)
    entry = {
        "command": f"simulate {cfg.system}",
        "params": payload,
        "seed": cfg.recipe.seed,
        "config_hash": chash,
        "journals": [
            {
                "label": "timeseries",
                "file": journal,
                "sha256": file_sha256(jpath),
                "rows": len(result.rows),
            }
        ],
        "snapshots": [snapshot],
        "summary": {
            "final_time": result.state.time,
            "worst_gauge_residual": worst,
            "initial_gauge_residual": result.rows[0][col],
        },
    }
    _append_run(outdir, entry)
    print(f"journal {journal}: {len(result.rows)} rows, columns {', '.join(result.header)}")
    print(f"worst gauge residual {worst:.3e}, final time {result.state.time:.6g}")
    return EXIT_OK


# -- verify -------------------------------------------------------------------

_SCAN_LABELS = {
    "symbol_pp": "symbol ratio, equal signs",
    "symbol_pm": "symbol ratio, opposite signs",
    "angle": "angle ratio",
    "leibniz": "hyperbolic Leibniz ratio",
    "integral": "weighted integral sup",
}


def cmd_verify_nullforms(args) -> int:
    from .coneintegrals import integral_sup_scan
    from .nullforms import angle_bound_scan, leibniz_scan, symbol_bound_scan

    num = int(float(args.samples))
    base = load_baselines()["scans"]
    rows = []
    worst = 0.0
    for name, fn, kw in (
        ("symbol_pp", symbol_bound_scan, {"sign1": 1, "sign2": 1}),
        ("symbol_pm", symbol_bound_scan, {"sign1": 1, "sign2": -1}),
        ("angle", angle_bound_scan, {"sign1": 1, "sign2": 1}),
        ("leibniz", leibniz_scan, {}),
    ):
        sup = fn(num=num, radius=args.radius, seed=args.seed, **kw).sup
        ref = sum(base[name]) / len(base[name])
        drift = abs(sup - ref) / ref
        worst = max(worst, drift)
        rows.append((name, sup, ref, drift))
    sup = integral_sup_scan(
        num_samples=args.integral_samples,
        radius=8.0,
        seed=args.seed,
        include_far_tail=False,
        **exp.INTEGRAL_SCAN_PARAMS,
    ).sup
    ref = sum(base["integral"]) / len(base["integral"])
    drift = abs(sup - ref) / ref
    worst = max(worst, drift)
    rows.append(("integral", sup, ref, drift))

    cal = exp.calibration_ratio()
    _print_table(
        ("scan", "sup", "baseline", "drift"),
        [
            (_SCAN_LABELS[n], f"{s:.9f}", f"{r:.9f}", f"{d:.2%}")
            for n, s, r, d in rows
        ],
    )
    print(f"calibration point ratio {cal!r} (must be exactly 1.0)")

    if args.outdir:
        outdir = _ensure_outdir(args.outdir)
        payload = {
            "samples": num,
            "seed": args.seed,
            "radius": args.radius,
            "integral_samples": args.integral_samples,
        }
        chash = _config_hash(payload)
        journal = f"scans-{chash[:8]}.csv"
        jpath = os.path.join(outdir, journal)
        write_journal(
            jpath,
            ("scan", "sup", "baseline", "drift"),
            [(i, s, r, d) for i, (_, s, r, d) in enumerate(rows)],
        )
        _append_run(
            outdir,
            {
                "command": "verify nullforms",
                "params": payload,
                "seed": args.seed,
                "config_hash": chash,
                "journals": [
                    {
                        "label": "scans",
                        "file": journal,
                        "sha256": file_sha256(jpath),
                        "rows": len(rows),
                    }
                ],
                "summary": {"worst_drift": worst, "calibration_ratio": cal},
            },
        )
        print(f"journal {journal}")

    ok = worst <= 0.02 and cal == 1.0
    if not ok:
        print(f"cswave: scan drift {worst:.2%} exceeds the 2% gate", file=sys.stderr)
    return EXIT_OK if ok else EXIT_ACCEPTANCE


def cmd_verify_integrals(args) -> int:
    if args.case != "pp":
        raise UsageError(
            "case: only the equal-signs branch 'pp' has a closed form at xi = 0"
        )
    a1, a2 = args.alpha
    taus = args.tau
    rows = []
    worst = 0.0
    for tau in taus:
        got = delta_convolution_integral(tau, (args.xi_small, 0.0), a1, a2, args.r, "pp")
        exact = math.pi * (tau / 2.0) ** (1.0 - (a1 + a2) * args.r)
        rel = abs(got - exact) / exact
        worst = max(worst, rel)
        rows.append((tau, got, exact, rel))
    _print_table(
        ("tau", "quadrature", "closed_form", "rel_error"),
        [(f"{t:g}", f"{g:.12g}", f"{e:.12g}", f"{r:.2e}") for t, g, e, r in rows],
    )
    if args.slopes:
        fit = exp.cone_slope_study(a1, a2, args.r)
        print(
            f"power-law fits: ray slope {fit.ray_slope:.4f} vs {fit.ray_target:.4f}, "
            f"band slope {fit.band_slope:.4f} vs {fit.band_target:.4f}"
        )
    if args.outdir:
        outdir = _ensure_outdir(args.outdir)
        payload = {
            "case": args.case,
            "alpha": [a1, a2],
            "r": args.r,
            "tau": list(taus),
            "xi_small": args.xi_small,
        }
        chash = _config_hash(payload)
        journal = f"integrals-{chash[:8]}.csv"
        jpath = os.path.join(outdir, journal)
        write_journal(jpath, ("tau", "quadrature", "closed_form", "rel_error"), rows)
        _append_run(
            outdir,
            {
                "command": "verify integrals",
                "params": payload,
                "seed": None,
                "config_hash": chash,
                "journals": [
                    {
                        "label": "integrals",
                        "file": journal,
                        "sha256": file_sha256(jpath),
                        "rows": len(rows),
                    }
                ],
                "summary": {"worst_rel_error": worst},
            },
        )
        print(f"journal {journal}")
    if worst > 1e-8:
        print(
            f"cswave: closed-form error {worst:.2e} exceeds the 1e-8 gate",
            file=sys.stderr,
        )
        return EXIT_ACCEPTANCE
    return EXIT_OK


def cmd_verify_norms(args) -> int:
    rows = exp.norm_scaling_samples(lam=args.lam, n=args.n, s=args.s, r=args.r)
    _print_table(
        ("data", "norm of dilated", "scaled norm", "rel_error"),
        [(r.label, f"{r.lhs:.12g}", f"{r.rhs:.12g}", f"{r.rel:.2e}") for r in rows],
    )
    gates = {"single-mode": 1e-10, "gaussian": 1e-3}
    ok = all(r.rel <= gates[r.label] for r in rows)

    preset_rows = []
    for r in args.preset_r:
        cp = contraction_parameters(r, args.margin)
        ce = critical_exponent(r)
        expected_s = 3.0 / (2.0 * r) - 0.5 + args.margin
        expected_b = 0.5 + 1.0 / (2.0 * r) + args.margin
        exact = cp.s == expected_s and cp.b == expected_b
        ok = ok and exact
        preset_rows.append(
            (f"{r:g}", f"{cp.s:.6f}", f"{cp.b:.6f}", f"{ce.scaling:.6f}", f"{ce.gap:.6f}")
        )
    print("\ncompliant presets (margin {:g}):".format(args.margin))
    _print_table(("r", "s", "b", "critical s", "gap"), preset_rows)
    if not ok:
        print("cswave: a norm-scaling row or preset identity failed", file=sys.stderr)
    return EXIT_OK if ok else EXIT_ACCEPTANCE


def cmd_verify_scaling(args) -> int:
    res = exp.scaling_pullback_study(
        lam=args.lam, n=args.n, dt=args.dt, t_final=args.T
    )
    print(
        f"dilation factor {res.lam}: pullback relative error {res.error:.3e} "
        f"(gate 1e-3), reference size {res.base_norm:.3e}"
    )
    if res.error > 1e-3:
        return EXIT_ACCEPTANCE
    return EXIT_OK


def cmd_verify_decompositions(args) -> int:
    passed, details = acceptance.criterion_projection_algebra()
    print(f"projection and nullform algebra: {details}")
    return EXIT_OK if passed else EXIT_ACCEPTANCE


# -- picard ---------------------------------------------------------------------


def cmd_picard(args) -> int:
    s, b, r = args.s, args.b, args.r
    if args.theorem_compliant:
        preset = contraction_parameters(args.r, args.margin)
        s, b, r = preset.s, preset.b, preset.r
    config = PicardConfig(
        T=args.T, iterations=args.iterations, s=s, b=b, r=r, nodes=args.nodes
    )
    recipe = exp.DataRecipe(
        name=args.recipe, amplitude=args.amp, seed=args.seed, band=tuple(args.band)
    )
    res = exp.picard_study(
        amplitude=args.amp, n=args.n, config=config, recipe=recipe
    )
    rows = []
    for k, d in enumerate(res.diffs):
        ratio = "" if k == 0 else f"{res.ratios[k - 1]:.3e}"
        rows.append((str(k + 1), f"{d:.6e}", ratio))
    _print_table(("iteration", "difference", "ratio"), rows)
    note = "contraction failed" if res.contraction_failed else "contracting"
    print(f"{note} at amplitude {args.amp:g}, T {args.T:g} (s={s:.4f}, b={b:.4f}, r={r:g})")

    if args.outdir:
        outdir = _ensure_outdir(args.outdir)
        payload = {
            "amplitude": args.amp,
            "n": args.n,
            "T": args.T,
            "iterations": args.iterations,
            "s": s,
            "b": b,
            "r": r,
            "nodes": args.nodes,
            "recipe": args.recipe,
            "seed": args.seed,
            "band": list(args.band),
        }
        chash = _config_hash(payload)
        journal = f"picard-{chash[:8]}.csv"
        jpath = os.path.join(outdir, journal)
        write_journal(
            jpath,
            ("iteration", "difference", "ratio"),
            [
                (k + 1, d, res.ratios[k - 1] if k else 0.0)
                for k, d in enumerate(res.diffs)
            ],
        )
        _append_run(
            outdir,
            {
                "command": "picard",
                "params": payload,
                "seed": args.seed,
                "config_hash": chash,
                "journals": [
                    {
                        "label": "picard",
                        "file": journal,
                        "sha256": file_sha256(jpath),
                        "rows": len(res.diffs),
                    }
                ],
                "summary": {
                    "contraction_failed": res.contraction_failed,
                    "first_difference": res.diffs[0] if res.diffs else None,
                },
            },
        )
        print(f"journal {journal}")
    # contraction is reported, never asserted
    return EXIT_OK


# -- report ----------------------------------------------------------------------


def _render_suite(criteria: list) -> None:
    _print_table(
        ("id", "status", "seconds", "check"),
        [
            (
                str(c["id"]),
                "PASS" if c["passed"] else "FAIL",
                f"{c['elapsed']:.1f}",
                f"{c['name']}: {c['details']}",
            )
            for c in criteria
        ],
    )


def cmd_report(args) -> int:
    outdir = args.rundir
    manifest_path = os.path.join(outdir, "manifest.json")
    if args.init and not os.path.exists(manifest_path):
        _ensure_outdir(outdir)
        write_manifest(manifest_path, {"runs": []})
    if not os.path.exists(manifest_path):
        raise UsageError(f"no manifest.json in {outdir!r}; not a run directory")

    if args.full or args.ids:
        ids = None
        if args.ids:
            ids = sorted({int(tok) for tok in args.ids.replace(",", " ").split()})
        try:
            results = acceptance.run_all(ids)
        except KeyError as err:
            raise UsageError(str(err)) from None
        criteria = [
            {
                "id": r.cid,
                "name": r.name,
                "passed": r.passed,
                "details": r.details,
                "elapsed": r.elapsed,
            }
            for r in results
        ]
        payload = {"ids": ids or [c[0] for c in acceptance.CRITERIA]}
        chash = _config_hash(payload)
        journal = f"acceptance-{chash[:8]}.csv"
        jpath = os.path.join(outdir, journal)
        write_journal(
            jpath,
            ("id", "passed", "seconds"),
            [(r.cid, int(r.passed), r.elapsed) for r in results],
        )
        _append_run(
            outdir,
            {
                "command": "report suite",
                "params": payload,
                "seed": None,
                "config_hash": chash,
                "journals": [
                    {
                        "label": "acceptance",
                        "file": journal,
                        "sha256": file_sha256(jpath),
                        "rows": len(results),
                    }
                ],
                "criteria": criteria,
            },
        )
        _render_suite(criteria)
        report = {"criteria": criteria, "all_passed": all(c["passed"] for c in criteria)}
        with open(os.path.join(outdir, "report.json"), "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        return EXIT_OK if report["all_passed"] else EXIT_ACCEPTANCE

    runs = read_manifest(manifest_path).get("runs", [])
    if not runs:
        _print_table(("kind", "artifact", "note"), [])
        with open(os.path.join(outdir, "report.json"), "w") as fh:
            json.dump({"runs": [], "all_passed": True}, fh, indent=2)
            fh.write("\n")
        return EXIT_OK

    rows = []
    failed = False
    suite = None
    for run in runs:
        if "criteria" in run:
            suite = run
            continue
        for jd in run.get("journals", []):
            jpath = os.path.join(outdir, jd["file"])
            if not os.path.exists(jpath):
                rows.append((run["command"], jd["file"], "missing"))
                failed = True
                continue
            header, data = read_journal(jpath)
            note = f"{data.shape[0]} rows, columns {', '.join(header)}"
            if file_sha256(jpath) != jd.get("sha256"):
                note += " (content changed since the run)"
            rows.append((run["command"], jd["file"], note))
    _print_table(("kind", "artifact", "note"), rows)
    if suite is not None:
        print()
        _render_suite(suite["criteria"])
        failed = failed or not all(c["passed"] for c in suite["criteria"])
    report = {
        "runs": [
            {"command": r.get("command"), "summary": r.get("summary")}
            for r in runs
            if "criteria" not in r
        ],
        "criteria": suite["criteria"] if suite else [],
        "all_passed": not failed,
    }
    with open(os.path.join(outdir, "report.json"), "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return EXIT_OK if not failed else EXIT_ACCEPTANCE


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cswave",
        description="Half-wave simulation and harmonic-analysis checks.",
        epilog=_COLUMNS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser(
        "simulate",
        help="integrate one system and journal observables",
        epilog=_COLUMNS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sim.add_argument("system", choices=list(exp.SYSTEMS))
    sim.add_argument("--config", help="INI file; flags override its values")
    sim.add_argument("--n", type=int, help="grid points per axis (even)")
    sim.add_argument("--length", type=float, help="box side length")
    sim.add_argument("--kappa", type=float, help="coupling constant")
    sim.add_argument("--mass", type=float, help="spinor mass (csd)")
    sim.add_argument(
        "--massive", type=_parse_bool, help="scalar compensation mass on/off (csh)"
    )
    sim.add_argument("--potential", help="'self-dual', 'none', or coefficients")
    sim.add_argument("--constraint", choices=("project", "reject"))
    sim.add_argument("--recipe", help="initial data profile name")
    sim.add_argument("--amp", type=float, help="data amplitude")
    sim.add_argument("--seed", type=int, help="data seed")
    sim.add_argument("--band", type=_parse_pair, help="annulus band 'lo,hi'")
    sim.add_argument("--mode", type=_parse_pair, help="plane-wave mode 'k1,k2'")
    sim.add_argument("--sigma", type=float, help="gaussian width")
    sim.add_argument("--dt", type=float, help="time step")
    sim.add_argument("--T", type=float, help="horizon")
    sim.add_argument("--scheme", help="etd-midpoint or etd-euler")
    sim.add_argument("--stride", type=int, help="journal every k-th step")
    sim.add_argument("--outdir", help="output directory")
    sim.add_argument(
        "--theorem-compliant",
        action="store_true",
        help="derive the norm indices from r via the compliant preset",
    )
    sim.add_argument("--margin", type=float, help="preset margin above critical")
    sim.set_defaults(func=cmd_simulate)

    ver = sub.add_parser("verify", help="standalone numerical checks")
    vsub = ver.add_subparsers(dest="mode", required=True)

    vn = vsub.add_parser("nullforms", help="randomized sup scans vs frozen baselines")
    vn.add_argument("--samples", default="1e6", help="samples per scan")
    vn.add_argument("--seed", type=int, default=0)
    vn.add_argument("--radius", type=float, default=10.0)
    vn.add_argument("--integral-samples", type=int, default=1000)
    vn.add_argument("--outdir")
    vn.set_defaults(func=cmd_verify_nullforms)

    vi = vsub.add_parser("integrals", help="quadrature vs closed forms")
    vi.add_argument("--case", default="pp", help="sign branch (only 'pp')")
    vi.add_argument("--alpha", type=float, nargs=2, default=(0.5, 0.5))
    vi.add_argument("--r", type=float, default=2.0)
    vi.add_argument("--tau", type=float, nargs="+", default=(3.0, 5.0, 10.0))
    vi.add_argument("--xi-small", type=float, default=1e-6)
    vi.add_argument("--slopes", action="store_true", help="also fit the power laws")
    vi.add_argument("--outdir")
    vi.set_defaults(func=cmd_verify_integrals)

    vm = vsub.add_parser("norms", help="norm scaling rows and compliant presets")
    vm.add_argument("--lam", type=int, default=2)
    vm.add_argument("--n", type=int, default=32)
    vm.add_argument("--s", type=float, default=0.5)
    vm.add_argument("--r", type=float, default=1.5)
    vm.add_argument("--preset-r", type=float, nargs="+", default=(1.2, 1.5, 2.0))
    vm.add_argument("--margin", type=float, default=0.01)
    vm.set_defaults(func=cmd_verify_norms)

    vs = vsub.add_parser("scaling", help="flow covariance under dilation")
    vs.add_argument("--lam", type=int, default=2)
    vs.add_argument("--n", type=int, default=32)
    vs.add_argument("--dt", type=float, default=2e-3)
    vs.add_argument("--T", type=float, default=0.25)
    vs.set_defaults(func=cmd_verify_scaling)

    vd = vsub.add_parser("decompositions", help="projection and nullform algebra")
    vd.set_defaults(func=cmd_verify_decompositions)

    pic = sub.add_parser("picard", help="iteration differences for small data")
    pic.add_argument("--amp", type=float, default=0.01)
    pic.add_argument("--n", type=int, default=32)
    pic.add_argument("--T", type=float, default=0.5)
    pic.add_argument("--iterations", type=int, default=5)
    pic.add_argument("--nodes", type=int, default=16)
    pic.add_argument("--s", type=float, default=0.75)
    pic.add_argument("--b", type=float, default=0.76)
    pic.add_argument("--r", type=float, default=2.0)
    pic.add_argument("--recipe", default="annulus-spectrum")
    pic.add_argument("--seed", type=int, default=7)
    pic.add_argument("--band", type=_parse_pair, default=(3.0, 6.0))
    pic.add_argument(
        "--theorem-compliant",
        action="store_true",
        help="derive (s, b) from r via the compliant preset",
    )
    pic.add_argument("--margin", type=float, default=0.01)
    pic.add_argument("--outdir")
    pic.set_defaults(func=cmd_picard)

    rep = sub.add_parser("report", help="aggregate a run directory")
    rep.add_argument("rundir")
    rep.add_argument(
        "--full", action="store_true", help="execute the full acceptance suite"
    )
    rep.add_argument("--ids", help="comma-separated criterion ids to execute")
    rep.add_argument(
        "--init", action="store_true", help="create manifest.json if missing"
    )
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BlowupError as err:
        print(f"cswave: blowup: {err}", file=sys.stderr)
        return EXIT_BLOWUP
    except ContradictionError as err:
        print(f"cswave: bound violated: {err}", file=sys.stderr)
        return EXIT_ACCEPTANCE
    except (UsageError, ResourceError, QuadratureError, ConstraintViolationError) as err:
        print(f"cswave: error: {err}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
