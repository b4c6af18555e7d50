"""Command-line front end: config in, CSV + SVG artifacts out.

Subcommands: spectrum, real-density, boundary, fraction, phase-diagram,
compare, mech.  Every figure-producing command writes the underlying CSV
next to the SVG, and identical command lines with identical seeds produce
byte-identical CSVs.  A JSON config file can mirror any flag; explicit
flags win.  Exit codes: 0 success, 1 acceptance-threshold failure,
2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np
from scipy import integrate

from . import analytic, svg
from .ensemble import (
    ModelParams,
    RunConfig,
    compare_density,
    run_ensemble,
    save_artifact,
)
from .linalg import ClassificationError, EigensolverError, MetricSpec
from .analytic import BranchCollisionError
from .mech import IllConditionedError, MechParams, mech_spectrum

EXIT_OK = 0
EXIT_THRESHOLD = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _fmt(x) -> str:
    return repr(float(x))


def _load_config_file(path: Path | None) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    return data


def _opt(args, cfg: dict, key: str, default=None):
    """Flag value if given, else config-file value, else default."""
    v = getattr(args, key, None)
    if v is not None:
        return v
    if key in cfg:
        return cfg[key]
    if key == "lam" and "lambda" in cfg:
        return cfg["lambda"]
    return default


def _resolve_k(n: int, k, lam) -> int:
    """k wins over lambda; lambda is rounded to the nearest representable k."""
    if k is not None:
        return int(k)
    if lam is None:
        raise ValueError("provide --k or --lambda")
    kk = int(round(float(lam) * n))
    if abs(kk / n - lam) > 1e-12:
        print(f"warning: lambda={lam} rounded to k={kk} (lambda={kk / n})", file=sys.stderr)
    return kk


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _eigenvalue_rows(values, real_mask) -> str:
    lines = ["sample_index,re,im,class"]
    for z, is_real in zip(values, real_mask):
        lines.append(f"0,{_fmt(z.real)},{_fmt(z.imag)},{'R' if is_real else 'C'}")
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> int:
    cfg = _load_config_file(args.config)
    n = int(_opt(args, cfg, "n", 256))
    k = _resolve_k(n, _opt(args, cfg, "k"), _opt(args, cfg, "lam", 0.5))
    t = float(_opt(args, cfg, "t", -1.0))
    m = float(_opt(args, cfg, "m", 1.0))
    seed = int(_opt(args, cfg, "seed", 0))
    out = Path(_opt(args, cfg, "out", "out"))

    spec = MetricSpec(n=n, k=k, t=t)
    config = RunConfig(model=ModelParams(metric=spec, m=m, seed=seed), samples=1)
    art = run_ensemble(config)
    values = art.eigen_values[0]
    mask = art.real_masks[0]
    _write(out / "eigenvalues.csv", _eigenvalue_rows(values, mask))

    overlay = t == -1.0 and 0 < k < n
    ext = 1.1 * max(np.max(np.abs(values)), 1.0 / m)
    canvas = svg.Canvas((-ext, ext), (-ext, ext),
                        title=f"spectrum n={n} k={k} t={t:g} m={m:g}",
                        xlabel="Re", ylabel="Im")
    if overlay:
        line = analytic.boundary_curve(spec.lam, m).polyline()
        canvas.polyline(line[:, 0], line[:, 1], color="#c03020")
        canvas.polyline(line[:, 0], -line[:, 1], color="#c03020")
    canvas.circles(values.real[~mask], values.imag[~mask], color="#1f3b73")
    canvas.circles(values.real[mask], np.zeros(int(mask.sum())), color="#106030")
    _write(out / "scatter.svg", canvas.render())
    _write(out / "run_meta.json", json.dumps(
        {"boundary_overlay": "analytic" if overlay else "unavailable (t != -1)",
         "n": n, "k": k, "t": t, "m": m, "seed": seed}, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def cmd_real_density(args) -> int:
    cfg = _load_config_file(args.config)
    lam = float(_opt(args, cfg, "lam", 0.25))
    t = float(_opt(args, cfg, "t", -1.0))
    m = float(_opt(args, cfg, "m", 1.0))
    grid = int(_opt(args, cfg, "grid", 512))
    out = Path(_opt(args, cfg, "out", "out"))

    curve = analytic.real_density_curve(lam, t, m, grid=grid)
    lines = ["x,rho"] + [f"{_fmt(x)},{_fmt(r)}" for x, r in zip(curve.xs, curve.rho)]
    _write(out / "real_density.csv", "\n".join(lines) + "\n")

    canvas = svg.Canvas((float(curve.xs[0]), float(curve.xs[-1])),
                        (0.0, float(max(curve.rho.max() * 1.15, 1e-3))),
                        title=f"real-axis density lam={lam:g} t={t:g} m={m:g}",
                        xlabel="x", ylabel="rho")
    canvas.polyline(curve.xs, curve.rho, color="#c03020")
    _write(out / "real_density.svg", canvas.render())
    return EXIT_OK


def cmd_boundary(args) -> int:
    cfg = _load_config_file(args.config)
    lam = float(_opt(args, cfg, "lam", 0.25))
    m = float(_opt(args, cfg, "m", 1.0))
    out = Path(_opt(args, cfg, "out", "out"))
    if not 0 < lam < 1:
        raise ValueError(f"boundary requires 0 < lambda < 1, got {lam}")

    curve = analytic.boundary_curve(lam, m)
    lines = ["theta,r_minus,r_plus"] + [
        f"{_fmt(th)},{_fmt(rm)},{_fmt(rp)}"
        for th, rm, rp in zip(curve.thetas, curve.r_minus, curve.r_plus)
    ]
    _write(out / "boundary.csv", "\n".join(lines) + "\n")

    ext = 1.25 / m
    canvas = svg.Canvas((-ext, ext), (-ext, ext),
                        title=f"complex-domain boundary lam={lam:g} m={m:g} (t=-1)",
                        xlabel="Re", ylabel="Im")
    line = curve.polyline()
    canvas.polyline(line[:, 0], line[:, 1], color="#c03020")
    canvas.polyline(line[:, 0], -line[:, 1], color="#c03020")
    _write(out / "boundary.svg", canvas.render())
    return EXIT_OK


def _fraction_at(lam: float, t: float, m: float) -> float:
    if t == -1.0:
        return analytic.fraction_real(lam)
    if t > 0:
        return 1.0
    total = 0.0
    for lo, hi in analytic.support_intervals(lam, t, m).intervals:
        val, _ = integrate.quad(lambda x: analytic.rho_real_general(x, lam, t, m),
                                lo, hi, limit=200)
        total += val
    return total


def cmd_fraction(args) -> int:
    cfg = _load_config_file(args.config)
    t = float(_opt(args, cfg, "t", -1.0))
    m = float(_opt(args, cfg, "m", 1.0))
    grid = int(_opt(args, cfg, "grid", 41))
    out = Path(_opt(args, cfg, "out", "out"))

    lams = np.linspace(0.0, 1.0, grid)
    fracs = np.array([_fraction_at(lam, t, m) for lam in lams])
    lines = ["lam,fraction"] + [f"{_fmt(a)},{_fmt(f)}" for a, f in zip(lams, fracs)]
    _write(out / "fraction.csv", "\n".join(lines) + "\n")

    canvas = svg.Canvas((0.0, 1.0), (0.0, 1.05),
                        title=f"real-eigenvalue fraction vs lam at t={t:g}",
                        xlabel="lam", ylabel="fraction")
    canvas.polyline(lams, np.abs(1.0 - 2.0 * lams), color="#808080", width=1.0)
    canvas.polyline(lams, fracs, color="#c03020")
    _write(out / "fraction.svg", canvas.render())
    return EXIT_OK


def cmd_phase_diagram(args) -> int:
    cfg = _load_config_file(args.config)
    res = int(_opt(args, cfg, "resolution", 121))
    out = Path(_opt(args, cfg, "out", "out"))
    t_floor = -8.0

    lams = np.linspace(1.0 / 64.0, 63.0 / 64.0, res)
    rows = ["lam,t_cr,t_c,t_r"]
    regions = ["region,lam,t_lo,t_hi"]
    curves = []
    for lam in lams:
        cc = analytic.critical_curves(float(lam))
        t_r = "" if cc.t_r is None else _fmt(cc.t_r)
        rows.append(f"{_fmt(lam)},{_fmt(cc.t_cr)},{_fmt(cc.t_c)},{t_r}")
        lo, hi = sorted((cc.t_c, cc.t_cr))
        regions.append(f"DisconnectedComplex,{_fmt(lam)},{_fmt(lo)},{_fmt(hi)}")
        if cc.t_r is not None:
            lo, hi = sorted((cc.t_r, cc.t_cr))
            regions.append(f"ThreeRealIntervals,{_fmt(lam)},{_fmt(lo)},{_fmt(hi)}")
        curves.append(cc)
    _write(out / "critical_curves.csv", "\n".join(rows) + "\n")
    _write(out / "phase_regions.csv", "\n".join(regions) + "\n")

    canvas = svg.Canvas((0.0, 1.0), (t_floor, 1.5),
                        title="phase diagram (lam, t)", xlabel="lam", ylabel="t")
    canvas.polygon([0, 1, 1, 0], [0, 0, 1.5, 1.5], fill="#d9ead3", opacity=0.8)
    ys_lo = [max(min(c.t_c, c.t_cr), t_floor) for c in curves]
    ys_hi = [max(max(c.t_c, c.t_cr), t_floor) for c in curves]
    canvas.polygon(list(lams) + list(lams[::-1]), ys_hi + ys_lo[::-1],
                   fill="#ffe599", opacity=0.9)
    mag = [(lam, c) for lam, c in zip(lams, curves) if c.t_r is not None]
    if mag:
        xs = [lam for lam, _ in mag]
        lo = [max(min(c.t_r, c.t_cr), t_floor) for _, c in mag]
        hi = [max(max(c.t_r, c.t_cr), t_floor) for _, c in mag]
        canvas.polygon(xs + xs[::-1], hi + lo[::-1], fill="#d5a6bd", opacity=0.9)

    for attr, color in (("t_cr", "#c03020"), ("t_c", "#1f3b73"), ("t_r", "#6a1f73")):
        pts = [(lam, getattr(c, attr)) for lam, c in zip(lams, curves)
               if getattr(c, attr) is not None and getattr(c, attr) >= t_floor]
        if pts:
            canvas.polyline([p[0] for p in pts], [p[1] for p in pts], color=color)
    canvas.polyline([0, 1], [0, 0], color="#404040", width=1.0)
    _write(out / "phase_diagram.svg", canvas.render())
    return EXIT_OK


def _check(summary: dict, name: str, value: float, threshold: float, *, upper=True) -> None:
    ok = value <= threshold if upper else value >= threshold
    summary["checks"][name] = {
        "value": value,
        "threshold": threshold,
        "pass": bool(ok),
    }


def cmd_compare(args) -> int:
    cfg = _load_config_file(args.config)
    preset = _opt(args, cfg, "preset")
    out = Path(_opt(args, cfg, "out", "out"))
    workers = int(_opt(args, cfg, "workers", 1))

    if preset == "mech":
        return _compare_mech(args, cfg, out)
    if preset == "t-minus-1":
        n, k, t, m, seed, samples = 512, 128, -1.0, 1.0, 20240817, 20
    elif preset is None:
        n = int(_opt(args, cfg, "n", 256))
        k = _resolve_k(n, _opt(args, cfg, "k"), _opt(args, cfg, "lam", 0.25))
        t = float(_opt(args, cfg, "t", -1.0))
        m = float(_opt(args, cfg, "m", 1.0))
        seed = int(_opt(args, cfg, "seed", 0))
        samples = int(_opt(args, cfg, "samples", 20))
    else:
        raise ValueError(f"unknown preset {preset!r} (choose t-minus-1 or mech)")
    bins = int(_opt(args, cfg, "bins", 100))
    ref_m = _opt(args, cfg, "reference_m")
    ref_m = m if ref_m is None else float(ref_m)

    spec = MetricSpec(n=n, k=k, t=t)
    config = RunConfig(model=ModelParams(metric=spec, m=m, seed=seed),
                       samples=samples, bins_1d=bins, workers=workers)
    art = run_ensemble(config)
    save_artifact(art, out)

    # the reference curve may deliberately use a wrong m (negative control)
    curve = analytic.real_density_curve(spec.lam, t, ref_m, xs=art.hist1d.centers)
    cmp_stats = compare_density(art.hist1d, curve)
    summary = {"preset": preset, "reference_m": ref_m, "checks": {}}
    _check(summary, "l1", cmp_stats["l1"], 0.05)
    if t < 0:
        bound = abs(n - 2 * k) / n
        _check(summary, "min_fraction_real", min(art.fraction.per_sample), bound, upper=False)
    if t == -1.0 and 0 < k < n:
        _check(summary, "boundary_violation_rate",
               art.comparison["boundary_violation_rate"], 0.02)
        canvas = svg.Canvas((float(art.hist2d.xedges[0]), float(art.hist2d.xedges[-1])),
                            (float(art.hist2d.yedges[0]), float(art.hist2d.yedges[-1])),
                            title="complex-plane histogram", xlabel="Re", ylabel="Im")
        svg.heatmap(canvas, art.hist2d.xedges, art.hist2d.yedges, art.hist2d.density)
        line = analytic.boundary_curve(spec.lam, m).polyline()
        canvas.polyline(line[:, 0], line[:, 1], color="#c03020")
        canvas.polyline(line[:, 0], -line[:, 1], color="#c03020")
        _write(out / "hist2d.svg", canvas.render())

    canvas = svg.Canvas((float(art.hist1d.edges[0]), float(art.hist1d.edges[-1])),
                        (0.0, float(max(np.max(art.hist1d.density), curve.rho.max()) * 1.15 + 1e-9)),
                        title="real density: histogram vs analytic",
                        xlabel="x", ylabel="rho")
    canvas.polyline(art.hist1d.centers, art.hist1d.density, color="#1f3b73")
    canvas.polyline(curve.xs, curve.rho, color="#c03020")
    _write(out / "real_density_compare.svg", canvas.render())

    ok = all(c["pass"] for c in summary["checks"].values())
    summary["pass"] = ok
    _write(out / "compare_summary.json", json.dumps(summary, sort_keys=True, indent=2) + "\n")
    print(json.dumps(summary["checks"], sort_keys=True, indent=2))
    return EXIT_OK if ok else EXIT_THRESHOLD


def _compare_mech(args, cfg: dict, out: Path) -> int:
    n = int(_opt(args, cfg, "n", 256))
    seed = int(_opt(args, cfg, "seed", 0))
    samples = int(_opt(args, cfg, "samples", 10))
    params = MechParams(n=n, sigma=1.0, sigma_prime=1.0, m0=1.0, seed=seed)
    worst_frac = 1.0
    min_val = np.inf
    for i in range(samples):
        s = mech_spectrum(params, i)
        worst_frac = min(worst_frac, s.fraction_real)
        min_val = min(min_val, float(s.values.real.min()))
    summary = {"preset": "mech", "checks": {}}
    _check(summary, "fraction_real", worst_frac, 1.0, upper=False)
    _check(summary, "min_eigenvalue", min_val, -1e-8, upper=False)
    ok = all(c["pass"] for c in summary["checks"].values())
    summary["pass"] = ok
    _write(out / "compare_summary.json", json.dumps(summary, sort_keys=True, indent=2) + "\n")
    print(json.dumps(summary["checks"], sort_keys=True, indent=2))
    return EXIT_OK if ok else EXIT_THRESHOLD


def cmd_mech(args) -> int:
    cfg = _load_config_file(args.config)
    n = int(_opt(args, cfg, "n", 256))
    sigma = float(_opt(args, cfg, "sigma", 1.0))
    sigma_prime = float(_opt(args, cfg, "sigma_prime", 1.0))
    m0 = float(_opt(args, cfg, "m0", 1.0))
    seed = int(_opt(args, cfg, "seed", 0))
    samples = int(_opt(args, cfg, "samples", 10))
    out = Path(_opt(args, cfg, "out", "out"))

    params = MechParams(n=n, sigma=sigma, sigma_prime=sigma_prime, m0=m0, seed=seed)
    lines = ["sample_index,re,im,class"]
    all_vals = []
    for i in range(samples):
        s = mech_spectrum(params, i)
        for z, is_real in zip(s.values, s.real_mask):
            lines.append(f"{i},{_fmt(z.real)},{_fmt(z.imag)},{'R' if is_real else 'C'}")
        all_vals.append(np.sort(s.values.real))
    _write(out / "eigenvalues.csv", "\n".join(lines) + "\n")

    pooled = np.concatenate(all_vals)
    counts, edges = np.histogram(pooled, bins=60)
    dens = counts / (pooled.size * np.diff(edges))
    canvas = svg.Canvas((float(edges[0]), float(edges[-1])),
                        (0.0, float(dens.max() * 1.15 + 1e-9)),
                        title=f"squared-frequency density n={n}", xlabel="omega^2", ylabel="rho")
    centers = 0.5 * (edges[:-1] + edges[1:])
    canvas.polyline(centers, dens, color="#1f3b73")
    _write(out / "mech_density.svg", canvas.render())

    summary = {
        "n": n, "sigma": sigma, "sigma_prime": sigma_prime, "m0": m0,
        "seed": seed, "samples": samples,
        "fraction_real": 1.0 if pooled.size == samples * n else 0.0,
        "min_value": float(pooled.min()),
        "max_value": float(pooled.max()),
    }
    _write(out / "summary.json", json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudoherm",
        description="Pseudo-hermitian random matrices: spectra, analytic laws, comparisons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *names: str) -> None:
        flags = {
            "n": dict(type=int, help="matrix dimension"),
            "k": dict(type=int, help="number of +1 metric entries (wins over --lambda)"),
            "lam": dict(type=float, help="fraction k/n, rounded to the nearest k"),
            "t": dict(type=float, help="trailing metric value"),
            "m": dict(type=float, help="GUE width parameter"),
            "seed": dict(type=int, help="master seed"),
            "samples": dict(type=int, help="number of Monte Carlo samples"),
            "bins": dict(type=int, help="1-D histogram bin count"),
            "workers": dict(type=int, help="parallel worker processes"),
            "grid": dict(type=int, help="evaluation grid size"),
            "resolution": dict(type=int, help="lambda-grid resolution"),
        }
        for name in names:
            flag = "--lambda" if name == "lam" else f"--{name.replace('_', '-')}"
            p.add_argument(flag, dest=name, **flags[name])
        p.add_argument("--out", type=Path, help="output directory (default ./out)")
        p.add_argument("--config", type=Path, help="JSON config mirroring the flags")

    p = sub.add_parser("spectrum", help="one sample's eigenvalues + scatter figure")
    common(p, "n", "k", "lam", "t", "m", "seed")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("real-density", help="analytic real-axis density table + figure")
    common(p, "lam", "t", "m", "grid")
    p.set_defaults(func=cmd_real_density)

    p = sub.add_parser("boundary", help="t=-1 complex-domain boundary table + figure")
    common(p, "lam", "m")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("fraction", help="real-eigenvalue fraction over a lambda grid")
    common(p, "t", "m", "grid")
    p.set_defaults(func=cmd_fraction)

    p = sub.add_parser("phase-diagram", help="critical curves and phase regions")
    common(p, "resolution")
    p.set_defaults(func=cmd_phase_diagram)

    p = sub.add_parser("compare", help="Monte Carlo vs analytic with pass/fail thresholds")
    common(p, "n", "k", "lam", "t", "m", "seed", "samples", "bins", "workers")
    p.add_argument("--preset", choices=["t-minus-1", "mech"],
                   help="canned acceptance configuration")
    p.add_argument("--reference-m", dest="reference_m", type=float,
                   help="override m in the analytic reference (negative control)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("mech", help="positive-metric control ensemble M^-1 K")
    common(p, "n", "seed", "samples")
    p.add_argument("--sigma", type=float, help="K-factor variance scale")
    p.add_argument("--sigma-prime", dest="sigma_prime", type=float,
                   help="M-factor variance scale")
    p.add_argument("--m0", type=float, help="positive mass shift")
    p.set_defaults(func=cmd_mech)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EigensolverError, ClassificationError, BranchCollisionError,
            IllConditionedError, AssertionError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
