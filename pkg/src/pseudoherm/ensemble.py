"""Reproducible Monte Carlo over pseudo-hermitian ensembles.

Samples phi = A B in parallel with per-sample deterministic substreams,
aggregates 1-D (real axis) and 2-D (complex plane) histograms, estimates
the real-eigenvalue fraction, and compares against the analytic
predictions.  Results are bit-identical for a fixed master seed no matter
how many workers run the samples: each sample's generator is derived from
(master_seed, sample_index) alone, BLAS threading is pinned to one thread
inside sample evaluation, and aggregation is an ordered reduction.
"""

from __future__ import annotations

import hashlib
import json
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from scipy import stats as sps
from threadpoolctl import threadpool_limits

from . import analytic
from .linalg import (
    MetricSpec,
    Spectrum,
    build_phi,
    carlson_bound,
    classify_spectrum,
    eigenvalues,
    sample_gue,
)

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(z: int) -> int:
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def substream_key(master_seed: int, sample_index: int) -> int:
    """64-bit substream key: splitmix64(master ^ splitmix64(index)).

    Fixed forever; golden values are pinned in the tests so the mixing
    function cannot drift silently.
    """
    return _splitmix64((int(master_seed) & _MASK64) ^ _splitmix64(int(sample_index) & _MASK64))


def substream_rng(master_seed: int, sample_index: int) -> np.random.Generator:
    """Counter-based generator for one sample, independent of worker layout."""
    key = np.array([substream_key(master_seed, sample_index), _GOLDEN], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class ModelParams:
    """Full ensemble parameters: metric, GUE width, master seed."""

    metric: MetricSpec
    m: float
    seed: int

    def __post_init__(self) -> None:
        if self.m <= 0:
            raise ValueError(f"m must be positive, got {self.m}")


@dataclass(frozen=True)
class RunConfig:
    """One Monte Carlo run: model, sample count, histogram layout, workers.

    window_1d / window_2d of None auto-expand to 1.2x the analytic support
    extent (t = -1 closed forms, discriminant scan otherwise).
    """

    model: ModelParams
    samples: int
    bins_1d: int = 100
    bins_2d: tuple[int, int] = (40, 40)
    window_1d: tuple[float, float] | None = None
    window_2d: tuple[float, float, float, float] | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.bins_1d < 2 or min(self.bins_2d) < 2:
            raise ValueError("histogram bin counts must be >= 2")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    def resolve_windows(self) -> tuple[tuple[float, float], tuple[float, float, float, float]]:
        spec = self.model.metric
        m = self.model.m
        if self.window_1d is None:
            if spec.t == -1.0:
                ext = analytic.support_endpoint_a(spec.lam, m)
            else:
                sup = analytic.support_intervals(spec.lam, spec.t, m)
                ext = max((max(abs(lo), abs(hi)) for lo, hi in sup.intervals),
                          default=2.0 * max(1.0, abs(spec.t)) / m)
            w1 = (-1.2 * ext, 1.2 * ext)
        else:
            w1 = self.window_1d
        if self.window_2d is None:
            if spec.t == -1.0:
                r = 1.2 / m
            else:
                # no analytic boundary away from t = -1; fall back to the
                # spectral norm bound |phi| <= 2 max(1, |t|)/m
                r = 1.2 * 2.0 * max(1.0, abs(spec.t)) / m
            w2 = (-r, r, -r, r)
        else:
            w2 = self.window_2d
        return w1, w2


@dataclass(frozen=True)
class Histogram1D:
    """Real-axis histogram, density-normalized by total eigenvalue count.

    sum(counts) + below + above equals the number of classified-real
    eigenvalues; density integrates to the real mass fraction when
    below = above = 0.
    """

    edges: NDArray[np.float64]
    counts: NDArray[np.int64]
    total_eigenvalues: int
    below: int
    above: int

    @property
    def centers(self) -> NDArray[np.float64]:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def density(self) -> NDArray[np.float64]:
        widths = np.diff(self.edges)
        return self.counts / (self.total_eigenvalues * widths)


@dataclass(frozen=True)
class Histogram2D:
    """Complex-plane histogram of complex-classified eigenvalues only."""

    xedges: NDArray[np.float64]
    yedges: NDArray[np.float64]
    counts: NDArray[np.int64]
    total_eigenvalues: int
    outside: int

    @property
    def density(self) -> NDArray[np.float64]:
        area = np.outer(np.diff(self.xedges), np.diff(self.yedges))
        return self.counts / (self.total_eigenvalues * area)


@dataclass(frozen=True)
class FractionEstimate:
    """Mean and standard error of the per-sample real-eigenvalue fraction."""

    mean: float
    std_error: float
    per_sample: tuple[float, ...]
    n: int
    k: int
    t: float


@dataclass(frozen=True)
class RunArtifact:
    """Aggregated Monte Carlo result with a reproducibility hash.

    content_hash covers the canonical config (workers excluded) and the raw
    eigenvalue bytes in sample order, so identical configs reproduce the
    identical hash bit-for-bit regardless of worker count.
    """

    config: RunConfig
    content_hash: str
    eigen_values: NDArray[np.complex128]  # (samples, n)
    real_masks: NDArray[np.bool_]  # (samples, n)
    hist1d: Histogram1D
    hist2d: Histogram2D
    fraction: FractionEstimate
    comparison: dict
    carlson_violations: tuple[int, ...]
    runtime_seconds: float

    def spectra(self) -> list[Spectrum]:
        out = []
        for row, mask in zip(self.eigen_values, self.real_masks):
            up = np.flatnonzero(~mask & (row.imag > 0))
            lo = np.flatnonzero(~mask & (row.imag < 0))
            pairs = np.column_stack([up, lo]).astype(np.intp)
            out.append(Spectrum(values=row, real_mask=mask, pairs=pairs, tol=1e-8))
        return out


def _eval_chunk(args) -> list[tuple[int, NDArray[np.complex128]]]:
    (n, k, t, m, seed), indices = args
    spec = MetricSpec(n=n, k=k, t=t)
    out = []
    # single-threaded BLAS keeps results identical across worker layouts
    with threadpool_limits(limits=1):
        for idx in indices:
            rng = substream_rng(seed, idx)
            phi = build_phi(sample_gue(n, m, rng), spec)
            try:
                out.append((idx, eigenvalues(phi)))
            except Exception as exc:
                raise type(exc)(f"sample {idx}: {exc}") from exc
    return out


def _config_payload(config: RunConfig, *, include_workers: bool) -> dict:
    w1, w2 = config.resolve_windows()
    spec = config.model.metric
    payload = {
        "n": spec.n,
        "k": spec.k,
        "t": spec.t,
        "m": config.model.m,
        "seed": config.model.seed,
        "samples": config.samples,
        "bins_1d": config.bins_1d,
        "bins_2d": list(config.bins_2d),
        "window_1d": list(w1),
        "window_2d": list(w2),
    }
    if include_workers:
        payload["workers"] = config.workers
    return payload


def run_ensemble(config: RunConfig) -> RunArtifact:
    """Sample, diagonalize, classify, and aggregate one configured run.

    Deterministic for a fixed master seed regardless of `workers`.  The
    Carlson bound is enforced per sample at t = -1; at other t < 0 a
    violation is recorded in the artifact and warned about, since the
    bound's extension beyond the signature metric is an observation, not a
    theorem.
    """
    t_start = time.perf_counter()
    spec = config.model.metric
    m = config.model.m
    chunks = np.array_split(np.arange(config.samples), min(config.workers, config.samples))
    chunks = [c for c in chunks if c.size]
    key = (spec.n, spec.k, spec.t, m, config.model.seed)
    if config.workers == 1:
        results = [pair for c in chunks for pair in _eval_chunk((key, list(c)))]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(_eval_chunk, [(key, list(c)) for c in chunks]))
        results = [pair for part in parts for pair in part]
    results.sort(key=lambda pair: pair[0])
    eig = np.vstack([row for _, row in results])

    bound = carlson_bound(spec) if spec.t < 0 else 0
    masks = np.empty((config.samples, spec.n), dtype=bool)
    fractions = []
    violations = []
    for i in range(config.samples):
        s = classify_spectrum(eig[i])
        masks[i] = s.real_mask
        fractions.append(s.fraction_real)
        if spec.t < 0 and s.n_real < bound:
            if spec.t == -1.0:
                raise AssertionError(
                    f"sample {i}: {s.n_real} real eigenvalues, below the "
                    f"Carlson bound {bound} at t=-1"
                )
            violations.append(i)
            warnings.warn(
                f"sample {i}: {s.n_real} real eigenvalues, below |n-2k|={bound} "
                f"at t={spec.t}; recorded as a finding", stacklevel=2,
            )

    w1, w2 = config.resolve_windows()
    real_all = eig.real[masks]
    complex_all = eig[~masks]
    total = config.samples * spec.n

    edges1 = np.linspace(w1[0], w1[1], config.bins_1d + 1)
    counts1, _ = np.histogram(real_all, bins=edges1)
    hist1d = Histogram1D(
        edges=edges1,
        counts=counts1.astype(np.int64),
        total_eigenvalues=total,
        below=int(np.count_nonzero(real_all < w1[0])),
        above=int(np.count_nonzero(real_all > w1[1])),
    )
    xedges = np.linspace(w2[0], w2[1], config.bins_2d[0] + 1)
    yedges = np.linspace(w2[2], w2[3], config.bins_2d[1] + 1)
    counts2, _, _ = np.histogram2d(complex_all.real, complex_all.imag, bins=[xedges, yedges])
    hist2d = Histogram2D(
        xedges=xedges,
        yedges=yedges,
        counts=counts2.astype(np.int64),
        total_eigenvalues=total,
        outside=int(complex_all.size - counts2.sum()),
    )

    frac = np.array(fractions)
    fraction = FractionEstimate(
        mean=float(frac.mean()),
        std_error=float(frac.std(ddof=1) / np.sqrt(len(frac))) if len(frac) > 1 else 0.0,
        per_sample=tuple(float(f) for f in frac),
        n=spec.n,
        k=spec.k,
        t=spec.t,
    )

    curve = analytic.real_density_curve(spec.lam, spec.t, m, xs=hist1d.centers)
    comparison = compare_density(hist1d, curve)
    if spec.t == -1.0 and 0.0 < spec.lam < 1.0:
        boundary = analytic.boundary_curve(spec.lam, m)
        margin = 3.0 / (m * np.sqrt(spec.n))
        comparison["boundary_violation_rate"] = boundary_violation_rate(
            _mask_spectra(eig, masks), boundary, margin
        )

    digest = hashlib.sha256()
    digest.update(json.dumps(_config_payload(config, include_workers=False),
                             sort_keys=True).encode())
    digest.update(np.ascontiguousarray(eig).tobytes())

    return RunArtifact(
        config=config,
        content_hash=digest.hexdigest(),
        eigen_values=eig,
        real_masks=masks,
        hist1d=hist1d,
        hist2d=hist2d,
        fraction=fraction,
        comparison=comparison,
        carlson_violations=tuple(violations),
        runtime_seconds=time.perf_counter() - t_start,
    )


def _mask_spectra(eig: NDArray, masks: NDArray) -> list[Spectrum]:
    out = []
    for row, mask in zip(eig, masks):
        up = np.flatnonzero(~mask & (row.imag > 0))
        lo = np.flatnonzero(~mask & (row.imag < 0))
        out.append(Spectrum(values=row, real_mask=mask,
                            pairs=np.column_stack([up, lo]).astype(np.intp), tol=1e-8))
    return out


def estimate_fraction_real(artifact: RunArtifact) -> FractionEstimate:
    """Fraction estimate already aggregated in the artifact."""
    return artifact.fraction


def boundary_violation_rate(spectra, boundary: analytic.BoundaryCurve, margin: float) -> float:
    """Fraction of complex-classified eigenvalues outside the dilated region.

    A point violates when it is neither inside the analytic region nor
    within `margin` of its boundary.  An empty complex set gives 0.
    """
    zs = [s.complex_values for s in spectra]
    zs = np.concatenate(zs) if zs else np.array([], dtype=complex)
    if zs.size == 0 or np.isinf(margin):
        return 0.0
    outside = ~boundary.contains(zs)
    if not np.any(outside):
        return 0.0
    far = boundary.distance(zs[outside]) > margin
    return float(np.count_nonzero(far)) / zs.size


@dataclass(frozen=True)
class UniformityReport:
    """Interior-cell density statistics of a 2-D histogram at t = -1."""

    interior_cells: int
    densities: NDArray[np.float64]
    mean_density: float
    std_error: float
    max_rel_deviation: float
    expected: float


def uniformity_check(
    hist2d: Histogram2D,
    lam: float,
    m: float,
    margin: float = 0.25,
) -> UniformityReport:
    """Compare interior-cell densities against the uniform value m^2/pi.

    A cell counts as interior when its four corners and center all lie in
    the analytic region and at distance >= margin from its boundary, i.e.
    the cell sits inside the eroded region.
    """
    boundary = analytic.boundary_curve(lam, m)
    expected = analytic.rho_complex_uniform(m)
    xc = hist2d.xedges
    yc = hist2d.yedges
    dens = hist2d.density
    interior = []
    for i in range(len(xc) - 1):
        for j in range(len(yc) - 1):
            probes = np.array(
                [
                    xc[i] + 1j * yc[j],
                    xc[i + 1] + 1j * yc[j],
                    xc[i] + 1j * yc[j + 1],
                    xc[i + 1] + 1j * yc[j + 1],
                    0.5 * (xc[i] + xc[i + 1]) + 0.5j * (yc[j] + yc[j + 1]),
                ]
            )
            if np.all(boundary.contains(probes)) and np.all(boundary.distance(probes) >= margin):
                interior.append(dens[i, j])
    densities = np.asarray(interior, dtype=float)
    if densities.size == 0:
        return UniformityReport(0, densities, float("nan"), float("nan"),
                                float("nan"), expected)
    mean = float(densities.mean())
    se = float(densities.std(ddof=1) / np.sqrt(densities.size)) if densities.size > 1 else 0.0
    max_dev = float(np.max(np.abs(densities - expected)) / expected)
    return UniformityReport(
        interior_cells=densities.size,
        densities=densities,
        mean_density=mean,
        std_error=se,
        max_rel_deviation=max_dev,
        expected=expected,
    )


def compare_density(hist1d: Histogram1D, curve: analytic.RealDensityCurve) -> dict:
    """L1 distance and KS statistic between a histogram and an analytic curve.

    The curve must be tabulated at the histogram's bin centers; both are
    normalized against the total eigenvalue count, so masses compare
    directly.
    """
    centers = hist1d.centers
    if curve.xs.shape != centers.shape or not np.allclose(curve.xs, centers, atol=1e-9, rtol=0):
        raise ValueError("curve must be evaluated at the histogram bin centers")
    widths = np.diff(hist1d.edges)
    h = hist1d.density
    l1 = float(np.sum(np.abs(h - curve.rho) * widths))
    ks = float(np.max(np.abs(np.cumsum((h - curve.rho) * widths))))
    return {"l1": l1, "ks": ks}


@dataclass(frozen=True)
class DetectedIntervals:
    """Support intervals recovered from pooled 1-D Monte Carlo points."""

    count: int
    clusters: tuple[tuple[float, float], ...]
    gaps: tuple[tuple[float, float], ...]


def detect_intervals(
    points,
    *,
    alpha: float = 1e-8,
    max_strays: int = 5,
    flank: int = 25,
    min_width_frac: float = 0.002,
    min_cluster: int | None = None,
) -> DetectedIntervals:
    """Count disjoint support intervals in a pooled sample of real points.

    Every window between order statistics pts[i] and pts[i+1+j] containing
    j <= max_strays interior points is tested against an exact conditional
    null: given the j interior points plus the points in up to `flank`
    spacings on each side (clamped near the sample edges), a locally
    constant intensity puts Binomial(total, width/total_width) points in
    the window, whatever that intensity is.  Conditioning removes the
    density plug-in whose estimation noise would otherwise give the test
    heavy tails.  The window is declared a gap when the binomial CDF at j
    falls below alpha.  Flanks must stay local; a flank wide enough to
    reach a distant dense cluster would misstate the null and absorb
    sparse-but-real regions into gaps.  Stray tolerance matters because
    finite-n edges leak a few points into true gaps, which would otherwise
    shield them from any single-spacing test.  Windows narrower than
    min_width_frac of the sample span never fire.

    The detector is deliberately conservative: it only reports separations
    wide enough to be unambiguous at the sample's exposure.  A gap whose
    width is comparable to the local spacing scale of its sparser side is
    reported as unresolved, i.e. not at all.

    Overlapping gaps merge; clusters thinner than min_cluster (default
    max(5, 0.05% of the sample)) are treated as leakage and dropped.
    """
    pts = np.sort(np.asarray(points, dtype=float).ravel())
    n_pts = pts.size
    if n_pts < 20:
        lo = float(pts[0]) if n_pts else 0.0
        hi = float(pts[-1]) if n_pts else 0.0
        return DetectedIntervals(count=1, clusters=((lo, hi),), gaps=())
    if min_cluster is None:
        min_cluster = max(5, int(0.0005 * n_pts))
    width_floor = min_width_frac * (pts[-1] - pts[0])

    fired: list[tuple[int, int]] = []
    for j in range(max_strays + 1):
        ia = np.arange(0, n_pts - 1 - j)
        ib = ia + 1 + j
        nl = np.minimum(flank, ia)
        nr = np.minimum(flank, n_pts - 1 - ib)
        ok = (nl >= 3) & (nr >= 3)
        ia, ib, nl, nr = ia[ok], ib[ok], nl[ok], nr[ok]
        if ia.size == 0:
            continue
        width = pts[ib] - pts[ia]
        total_width = pts[ib + nr] - pts[ia - nl]
        frac = width / np.where(total_width > 0, total_width, np.inf)
        pval = sps.binom.cdf(j, j + nl + nr, frac)
        hit = (width >= width_floor) & (pval < alpha)
        fired.extend(zip(ia[hit].tolist(), ib[hit].tolist()))

    if not fired:
        return DetectedIntervals(count=1, clusters=((float(pts[0]), float(pts[-1])),), gaps=())

    fired.sort()
    merged = [list(fired[0])]
    for a, b in fired[1:]:
        if a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])

    clusters = []
    start = 0
    for a, b in merged:
        clusters.append((start, a))
        start = b
    clusters.append((start, n_pts - 1))
    kept = [(lo, hi) for lo, hi in clusters if hi - lo + 1 >= min_cluster]
    if not kept:
        kept = [max(clusters, key=lambda c: c[1] - c[0])]
    return DetectedIntervals(
        count=len(kept),
        clusters=tuple((float(pts[lo]), float(pts[hi])) for lo, hi in kept),
        gaps=tuple((float(pts[a]), float(pts[b])) for a, b in merged),
    )


def _fmt(x) -> str:
    return repr(float(x))


def save_artifact(artifact: RunArtifact, out_dir) -> Path:
    """Persist an artifact as config.json + CSV tables + summary.json.

    CSV bytes are a pure function of the run's content, so identical
    configs write identical files; summary.json additionally carries the
    wall-clock runtime.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    cfg = _config_payload(artifact.config, include_workers=True)
    (out / "config.json").write_text(json.dumps(cfg, sort_keys=True, indent=2) + "\n")

    lines = ["sample_index,re,im,class"]
    for i, (row, mask) in enumerate(zip(artifact.eigen_values, artifact.real_masks)):
        for z, is_real in zip(row, mask):
            tag = "R" if is_real else "C"
            lines.append(f"{i},{_fmt(z.real)},{_fmt(z.imag)},{tag}")
    (out / "eigenvalues.csv").write_text("\n".join(lines) + "\n")

    h1 = artifact.hist1d
    lines = ["bin_lo,bin_hi,count,density"]
    dens = h1.density
    for i in range(len(h1.counts)):
        lines.append(f"{_fmt(h1.edges[i])},{_fmt(h1.edges[i + 1])},{int(h1.counts[i])},{_fmt(dens[i])}")
    (out / "hist1d.csv").write_text("\n".join(lines) + "\n")

    h2 = artifact.hist2d
    lines = ["ix,iy,re_lo,im_lo,count,density"]
    dens2 = h2.density
    for i in range(h2.counts.shape[0]):
        for j in range(h2.counts.shape[1]):
            lines.append(
                f"{i},{j},{_fmt(h2.xedges[i])},{_fmt(h2.yedges[j])},"
                f"{int(h2.counts[i, j])},{_fmt(dens2[i, j])}"
            )
    (out / "hist2d.csv").write_text("\n".join(lines) + "\n")

    summary = {
        "content_hash": artifact.content_hash,
        "fraction_real": {
            "mean": artifact.fraction.mean,
            "std_error": artifact.fraction.std_error,
        },
        "comparison": artifact.comparison,
        "carlson_violations": list(artifact.carlson_violations),
        "runtime_seconds": artifact.runtime_seconds,
    }
    (out / "summary.json").write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return out


def with_workers(config: RunConfig, workers: int) -> RunConfig:
    """Same run on a different worker count (results must not change)."""
    return replace(config, workers=workers)
