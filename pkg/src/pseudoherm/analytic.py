"""Closed-form large-n spectral predictions for phi = A B.

Everything is parametrized by lam = k/n (fraction of +1 metric entries),
the trailing metric value t, and the GUE width parameter m.  The averaged
resolvent G(w) = lim <n^-1 tr (w - phi)^-1> is algebraic: the auxiliary
quantity b(w) solves a cubic in v = m b at u = m w,

    v^3 + v^2 u (1 + 1/t) + v (u^2/t + 1) + u (1 - lam + lam/t) = 0,

and G(w) = lam/(w + b) + (1 - lam)/(w + t b).  The real-axis density is
Im G(x - i0)/pi on the branch with Im G > 0.  For the signature metric
t = -1 the density, support endpoint, complex-domain boundary, area, and
real fraction all have closed forms; for general t the same cubic is
evaluated numerically and the phase structure is governed by three
critical curves in the (lam, t) plane.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

_OMEGA = np.exp(2j * np.pi / 3)


class BranchCollisionError(RuntimeError):
    """Raised when two cubic roots stay indistinguishable along a tracked path."""


def solve_cubic(c3: complex, c2: complex, c1: complex, c0: complex) -> NDArray[np.complex128]:
    """Roots of c3 z^3 + c2 z^2 + c1 z + c0 with complex coefficients.

    Cardano's method with the cancellation-safe cube-root choice, followed
    by damped Newton polish.  Returns three roots with multiplicities as
    repeated entries.  c3 = 0 raises ValueError.
    """
    if c3 == 0:
        raise ValueError("leading coefficient must be nonzero")
    p = complex(c2) / c3
    q = complex(c1) / c3
    r = complex(c0) / c3
    # depressed form y^3 + P y + Q, z = y - p/3
    pp = q - p * p / 3.0
    qq = 2.0 * p**3 / 27.0 - p * q / 3.0 + r
    if pp == 0 and qq == 0:
        return np.full(3, -p / 3.0, dtype=np.complex128)
    s = np.sqrt(complex((qq / 2.0) ** 2 + (pp / 3.0) ** 3))
    # pick the larger magnitude to avoid cancellation; the product of the
    # two candidates is -(P/3)^3 so at least one is nonzero here
    big = max(-qq / 2.0 + s, -qq / 2.0 - s, key=abs)
    c = big ** (1.0 / 3.0)
    ys = [c * w - pp / (3.0 * c * w) for w in (1.0, _OMEGA, _OMEGA**2)]
    roots = np.array([y - p / 3.0 for y in ys], dtype=np.complex128)
    for _ in range(2):
        f = ((c3 * roots + c2) * roots + c1) * roots + c0
        df = (3.0 * c3 * roots + 2.0 * c2) * roots + c1
        safe = np.where(df == 0, 1.0, df)
        step = np.where(df == 0, 0.0, f / safe)
        # near a multiple root Newton overshoots; skip outsized corrections
        step = np.where(np.abs(step) > 0.5 * (np.abs(roots) + 1.0), 0.0, step)
        roots = roots - step
    return roots


def gap_cubic_coeffs(u: complex, lam: float, t: float) -> tuple[complex, complex, complex, complex]:
    """Coefficients (c3, c2, c1, c0) of the cubic satisfied by v = m b at u = m w."""
    if t == 0:
        raise ValueError("t must be nonzero")
    return (
        1.0 + 0j,
        u * (1.0 + 1.0 / t),
        u * u / t + 1.0,
        u * (1.0 - lam + lam / t),
    )


def _green_value(w: complex, b: complex, lam: float, t: float) -> complex:
    d1 = w + b
    d2 = w + t * b
    if d1 == 0 or d2 == 0:
        return complex(np.inf, 0.0)
    return lam / d1 + (1.0 - lam) / d2


def _cubic_residual_scale(u: complex, lam: float, t: float, v: complex) -> float:
    c3, c2, c1, c0 = gap_cubic_coeffs(u, lam, t)
    av = abs(v)
    return max(abs(c3) * av**3, abs(c2) * av**2, abs(c1) * av, abs(c0), 1e-300)


@dataclass(frozen=True)
class GreenBranch:
    """Tracked physical branch of the auxiliary resolvent at one point w.

    b is the selected cubic root divided by m; g is G(w) evaluated on it.
    branch is 'holomorphic-consistent' when continuation from large |w| was
    unambiguous, 'ambiguous' when a forced tie-break occurred between roots
    that agree on G.
    """

    w: complex
    b: complex
    g: complex
    branch: str


def green_branch(
    w: complex,
    lam: float,
    t: float,
    m: float = 1.0,
    *,
    steps: int = 96,
    max_refine: int = 60,
) -> GreenBranch:
    """Physical resolvent branch at spectral point w.

    The branch is pinned by the large-|u| asymptote v ~ -(lam + t(1-lam))/u
    and followed inward along the constant-phase ray from radius
    1e3 * (1 + |u|) down to u = m w, bisecting any continuation step where
    the tracked root cannot be told from its nearest competitor.  Exactly
    real w is interpreted as the lower limit x - i0 via an infinitesimal
    negative imaginary offset, so Im g = pi * density inside the support.
    Unresolvable collisions raise BranchCollisionError.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must lie in [0, 1], got {lam}")
    if t == 0:
        raise ValueError("t must be nonzero")
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    u_end = m * complex(w)
    if u_end == 0:
        raise ValueError("w must be nonzero (use the density functions at the origin)")
    if u_end.imag == 0:
        u_end = complex(u_end.real, -1e-9 * (1.0 + abs(u_end.real)))

    r_end = abs(u_end)
    r_start = 1e3 * (1.0 + r_end)
    phase = u_end / r_end

    def roots_at(radius: float) -> NDArray[np.complex128]:
        return solve_cubic(*gap_cubic_coeffs(phase * radius, lam, t))

    v = min(
        roots_at(r_start),
        key=lambda z: abs(z - (-(lam + t * (1.0 - lam)) / (phase * r_start))),
    )
    # geometric radius schedule; list grows when a step needs bisecting
    radii = list(r_start * (r_end / r_start) ** (np.arange(1, steps + 1) / steps))
    refine_left = max_refine
    prev_r = r_start
    tag = "holomorphic-consistent"
    while radii:
        r = radii[0]
        rts = sorted(roots_at(r), key=lambda z: abs(z - v))
        d0 = abs(rts[0] - v)
        d1 = abs(rts[1] - v)
        if d0 > 0.5 * d1 and d0 > 1e-13 * (1.0 + abs(v)):
            if refine_left > 0 and r < prev_r * (1.0 - 1e-12):
                radii.insert(0, np.sqrt(prev_r * r))
                refine_left -= 1
                continue
            # refinement exhausted: accept only if the contenders agree on G
            g0 = _green_value(phase * r / m * 1.0, rts[0] / m, lam, t)
            g1 = _green_value(phase * r / m * 1.0, rts[1] / m, lam, t)
            if abs(g0 - g1) > 1e-9 * (abs(g0) + abs(g1) + 1.0):
                raise BranchCollisionError(
                    f"roots {rts[0]:.6g} and {rts[1]:.6g} stay equidistant from the "
                    f"tracked branch near |u|={r:.6g} (w={w:.6g}, lam={lam}, t={t})"
                )
            tag = "ambiguous"
        v = rts[0]
        prev_r = r
        radii.pop(0)

    # polish at the exact endpoint
    c3, c2, c1, c0 = gap_cubic_coeffs(u_end, lam, t)
    for _ in range(3):
        f = ((c3 * v + c2) * v + c1) * v + c0
        df = (3.0 * c3 * v + 2.0 * c2) * v + c1
        if df == 0:
            break
        v = v - f / df
    b = v / m
    return GreenBranch(w=complex(w), b=b, g=_green_value(u_end / m, b, lam, t), branch=tag)


def support_endpoint_a(lam: float, m: float = 1.0) -> float:
    """Half-width a of the real support [-a, a] at t = -1."""
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    d = abs(1.0 - 2.0 * lam)
    s = np.sqrt(lam * (1.0 - lam))
    # lam(1-lam) <= 1/4 keeps both cube-root arguments nonnegative
    inner = (1.0 - 2.0 * s) ** (1.0 / 3.0) + (1.0 + 2.0 * s) ** (1.0 / 3.0)
    return float(np.sqrt((3.0 * d ** (2.0 / 3.0) * inner + 2.0) / (2.0 * m * m)))


def rho_real_closed_form(x, lam: float, m: float = 1.0):
    """Real-eigenvalue density at t = -1 (signature metric), closed form.

    Normalized against the full spectrum, so the integral over [-a, a] is
    the real fraction |1 - 2 lam|, not 1.  Uses xi(x) = -27 m^4 (1-2lam) x
    and Delta(x) = xi^2 + 108 m^6 (1 - m^2 x^2)^3 with a sign(1-2lam)
    prefactor; returns 0 for |x| >= a and the limit m|1-2lam|/pi at x = 0.
    Vectorized over x.
    """
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must lie in [0, 1], got {lam}")
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    out = np.zeros_like(x_arr)
    a = support_endpoint_a(lam, m)
    # the closed form is 0/0 at the origin; use the analytic limit there
    at_zero = np.abs(x_arr) < 1e-12 * a
    out[at_zero] = m * abs(1.0 - 2.0 * lam) / np.pi
    inside = (np.abs(x_arr) < a) & ~at_zero
    xs = x_arr[inside]
    xi = -27.0 * m**4 * (1.0 - 2.0 * lam) * xs
    # Delta >= 0 on the support (its zero locus is the endpoint); clip rounding
    delta = np.maximum(xi**2 + 108.0 * m**6 * (1.0 - (m * xs) ** 2) ** 3, 0.0)
    rt = np.sqrt(delta)
    num = np.abs(xi - rt) ** (2.0 / 3.0) - np.abs(xi + rt) ** (2.0 / 3.0)
    sgn = np.sign(1.0 - 2.0 * lam)
    out[inside] = sgn * num / (np.sqrt(3.0) * 2.0 ** (2.0 / 3.0) * 6.0 * np.pi * m**2 * xs)
    return float(out[0]) if scalar else out


def rho_real_general(x, lam: float, t: float, m: float = 1.0):
    """Real-eigenvalue density for a general metric value t.

    Solves the gap cubic at u = m x; the complex roots of the
    real-coefficient cubic give conjugate G values, so the root with
    Im G > 0 is unambiguous and rho = Im G / pi on it, 0 where all roots
    are real.  Reduces to rho_real_closed_form at t = -1.  Vectorized
    over x.
    """
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    if t == 0:
        raise ValueError("t must be nonzero")
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    flat = x_arr.ravel()
    out = np.zeros(flat.shape)
    for i, xi in enumerate(flat):
        best = 0.0
        for v in solve_cubic(*gap_cubic_coeffs(m * xi, lam, t)):
            g = _green_value(xi, v / m, lam, t)
            if np.isfinite(g.real) and g.imag > best:
                best = g.imag
        out[i] = best / np.pi
    out = out.reshape(x_arr.shape)
    return float(out[0]) if scalar else out


def _discriminant_real_u(u: float, lam: float, t: float) -> float:
    """Discriminant of the (real-coefficient) gap cubic at real u.

    Positive: three distinct real roots, hence no density.  Negative: one
    real root and a conjugate pair, so density is possible.
    """
    _, c2, c1, c0 = gap_cubic_coeffs(u, lam, t)
    c2, c1, c0 = c2.real, c1.real, c0.real
    return (
        18.0 * c2 * c1 * c0
        - 4.0 * c2**3 * c0
        + c2**2 * c1**2
        - 4.0 * c1**3
        - 27.0 * c0**2
    )


@dataclass(frozen=True)
class SupportIntervals:
    """Ordered disjoint closed intervals supporting the real density."""

    intervals: tuple[tuple[float, float], ...]
    lam: float
    t: float
    m: float

    @property
    def count(self) -> int:
        return len(self.intervals)

    @property
    def total_length(self) -> float:
        return float(sum(hi - lo for lo, hi in self.intervals))


def support_intervals(
    lam: float,
    t: float,
    m: float = 1.0,
    *,
    x_max: float | None = None,
    grid: int = 4096,
    tol: float = 1e-9,
) -> SupportIntervals:
    """Real-axis support located from the gap-cubic discriminant.

    Scans |x| <= x_max (default 2.5 max(1, |t|)/m, beyond the spectral
    norm bound 2 max(1, |t|)/m) on a linear grid augmented with
    log-spaced points near the origin, bisects every discriminant sign
    change to `tol` absolute, keeps the windows where the discriminant is
    negative, and finally drops windows whose interior density vanishes
    (at lam=1/2, t=-1 the conjugate roots give real G, so the
    discriminant is negative yet no real eigenvalues exist).
    """
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    if t == 0:
        raise ValueError("t must be nonzero")
    if x_max is None:
        x_max = 2.5 * max(1.0, abs(t)) / m
    xs = np.linspace(-x_max, x_max, grid)
    near = np.concatenate([-np.logspace(-9, np.log10(x_max), 96), [0.0],
                           np.logspace(-9, np.log10(x_max), 96)])
    xs = np.unique(np.concatenate([xs, near]))
    disc = np.array([_discriminant_real_u(m * x, lam, t) for x in xs])

    def bisect(lo: float, hi: float, flo: float) -> float:
        for _ in range(200):
            if hi - lo <= tol:
                break
            mid = 0.5 * (lo + hi)
            fmid = _discriminant_real_u(m * mid, lam, t)
            if (fmid < 0) == (flo < 0):
                lo, flo = mid, fmid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    crossings = []
    for i in range(len(xs) - 1):
        if (disc[i] < 0) != (disc[i + 1] < 0):
            crossings.append(bisect(xs[i], xs[i + 1], disc[i]))
    edges = [-x_max] + crossings + [x_max]

    kept = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo <= 2 * tol:
            continue
        probes = lo + (hi - lo) * np.array([0.25, 0.5, 0.75])
        if _discriminant_real_u(m * 0.5 * (lo + hi), lam, t) >= 0:
            continue
        if np.max(rho_real_general(probes, lam, t, m)) <= 1e-10 * m:
            continue
        kept.append((float(lo), float(hi)))
    return SupportIntervals(intervals=tuple(kept), lam=lam, t=t, m=m)


def boundary_t_minus1(theta, lam: float, m: float = 1.0):
    """Polar radii (r_minus, r_plus) of the complex-domain boundary at t = -1.

    The domain only exists where sin^2(theta) >= sin^2(theta0) with
    sin(theta0) = |2 lam - 1|; directions in the excluded wedge return NaN
    radii (empty, not an error).  Vectorized over theta.
    """
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must lie in [0, 1], got {lam}")
    th = np.asarray(theta, dtype=float)
    scalar = th.ndim == 0
    th = np.atleast_1d(th)
    s0sq = (2.0 * lam - 1.0) ** 2
    ssq = np.sin(th) ** 2
    ratio = np.where(ssq > 0, s0sq / np.where(ssq > 0, ssq, 1.0),
                     np.where(s0sq == 0, 0.0, np.inf))
    inner = 1.0 - ratio
    ok = inner >= -1e-12
    root = np.sqrt(np.clip(inner, 0.0, None))
    r_minus = np.where(ok, np.sqrt(np.clip(1.0 - root, 0.0, None) / 2.0) / m, np.nan)
    r_plus = np.where(ok, np.sqrt((1.0 + root) / 2.0) / m, np.nan)
    if scalar:
        return float(r_minus[0]), float(r_plus[0])
    return r_minus, r_plus


@dataclass(frozen=True)
class BoundaryCurve:
    """Sampled boundary of the upper complex-eigenvalue blob at t = -1.

    thetas run from theta0 to pi - theta0 inclusive; the lower blob is the
    conjugate mirror.  r_minus and r_plus are the inner and outer radii.
    """

    thetas: NDArray[np.float64]
    r_minus: NDArray[np.float64]
    r_plus: NDArray[np.float64]
    theta0: float
    lam: float
    m: float

    def polyline(self) -> NDArray[np.float64]:
        """Closed (p, 2) polyline: outer arc, then the inner arc reversed."""
        xo = self.r_plus * np.cos(self.thetas)
        yo = self.r_plus * np.sin(self.thetas)
        xi = self.r_minus * np.cos(self.thetas[::-1])
        yi = self.r_minus * np.sin(self.thetas[::-1])
        pts = np.column_stack([np.concatenate([xo, xi]), np.concatenate([yo, yi])])
        return np.vstack([pts, pts[:1]])

    def contains(self, z) -> NDArray[np.bool_]:
        """Membership test for complex points, conjugation-symmetric."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        x, y = z.real, np.abs(z.imag)
        r = np.hypot(x, y)
        th = np.arctan2(y, x)
        rm, rp = boundary_t_minus1(th, self.lam, self.m)
        with np.errstate(invalid="ignore"):
            return np.where(np.isnan(rm), False, (r >= rm) & (r <= rp))

    def distance(self, z) -> NDArray[np.float64]:
        """Euclidean distance from points to the boundary polyline (folded to Im >= 0)."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        pts = self.polyline()
        a, b = pts[:-1], pts[1:]
        seg = b - a
        seg_len2 = np.maximum((seg**2).sum(axis=1), 1e-300)
        p = np.column_stack([z.real, np.abs(z.imag)])
        out = np.empty(len(p))
        # chunk the point x segment distance table to bound memory
        for start in range(0, len(p), 256):
            blk = p[start:start + 256]
            diff = blk[:, None, :] - a[None, :, :]
            tt = np.clip((diff * seg[None, :, :]).sum(axis=2) / seg_len2[None, :], 0.0, 1.0)
            proj = a[None, :, :] + tt[:, :, None] * seg[None, :, :]
            d = np.sqrt(((blk[:, None, :] - proj) ** 2).sum(axis=2))
            out[start:start + 256] = d.min(axis=1)
        return out


def boundary_curve(lam: float, m: float = 1.0, n_theta: int = 2048) -> BoundaryCurve:
    """Sample the t = -1 boundary on a uniform theta grid, wedge endpoints included."""
    theta0 = float(np.arcsin(min(1.0, abs(2.0 * lam - 1.0))))
    thetas = np.linspace(theta0, np.pi - theta0, n_theta)
    r_minus, r_plus = boundary_t_minus1(thetas, lam, m)
    # the exact wedge endpoints have r- = r+; rounding may push them to NaN
    for idx in (0, -1):
        if np.isnan(r_minus[idx]):
            r_minus[idx] = r_plus[idx] = 1.0 / (np.sqrt(2.0) * m)
    return BoundaryCurve(thetas=thetas, r_minus=r_minus, r_plus=r_plus,
                         theta0=theta0, lam=lam, m=m)


def domain_area(lam: float, m: float = 1.0) -> float:
    """Total area of the two complex-eigenvalue blobs at t = -1."""
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    return (1.0 - abs(1.0 - 2.0 * lam)) * np.pi / (m * m)


def rho_complex_uniform(m: float = 1.0) -> float:
    """Uniform 2-D eigenvalue density m^2/pi inside the complex domain (t = -1)."""
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    return m * m / np.pi


def fraction_real(lam: float) -> float:
    """Large-n fraction |1 - 2 lam| of real eigenvalues.

    Exact for the phase where the complex blobs coexist with a single real
    interval (the phase containing t = -1); elsewhere it gives the
    central-interval mass only.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must lie in [0, 1], got {lam}")
    return abs(1.0 - 2.0 * lam)


def distance_to_axis(lam: float, m: float = 1.0) -> float:
    """Gap between the complex domain and the real axis at t = -1.

    sin(theta0/2)/m with sin(theta0) = |2 lam - 1|; the minimum of the
    inner boundary's height, attained at theta = pi/2.
    """
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    theta0 = np.arcsin(min(1.0, abs(2.0 * lam - 1.0)))
    return float(np.sin(theta0 / 2.0) / m)


@dataclass(frozen=True)
class CriticalCurves:
    """The three t < 0 critical values at fixed lam.

    t_cr: the complex domain touches the real axis away from the center,
    spawning new real intervals.  t_c = 1/t_cr: its dual, where the domain
    touches at the origin.  t_r: where three real intervals merge back into
    one; only defined for 1/9 < lam < 8/9 (None outside).  xi_lambda and
    delta_lambda are the intermediates of the t_r closed form.
    """

    lam: float
    t_cr: float
    t_c: float
    t_r: float | None
    xi_lambda: float
    delta_lambda: float


def critical_curves(lam: float) -> CriticalCurves:
    """Evaluate t_cr = lam/(lam-1), t_c = (lam-1)/lam, and the t_r closed form.

    All three curves pass through (lam, t) = (1/2, -1).
    """
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lam must lie in (0, 1), got {lam}")
    t_cr = lam / (lam - 1.0)
    t_c = (lam - 1.0) / lam
    xi_l = -729.0 * lam * (lam - 1.0) * (7.0 * lam - 8.0)
    delta_l = 531441.0 * (8.0 - 9.0 * lam) ** 2 * (1.0 - lam) ** 2 * lam**2
    if 1.0 / 9.0 < lam < 8.0 / 9.0:
        sq = np.sqrt(delta_l)
        croot = (abs(xi_l + sq) ** (1.0 / 3.0) + abs(xi_l - sq) ** (1.0 / 3.0)) / 2.0 ** (1.0 / 3.0)
        t_r = float((6.0 * (2.0 - 3.0 * lam) - croot) / (3.0 * (8.0 - 9.0 * lam)))
    else:
        t_r = None
    return CriticalCurves(lam=lam, t_cr=t_cr, t_c=t_c, t_r=t_r,
                          xi_lambda=xi_l, delta_lambda=delta_l)


class PhaseLabel(enum.Enum):
    QUASI_HERMITIAN = "QuasiHermitian"
    DISCONNECTED_COMPLEX = "DisconnectedComplex"
    THREE_REAL_INTERVALS = "ThreeRealIntervals"
    CONNECTED_SINGLE = "ConnectedSingle"


@dataclass(frozen=True)
class PhasePoint:
    """Phase label plus a flag for points sitting exactly on a critical curve."""

    label: PhaseLabel
    on_boundary: bool


def phase_classify(lam: float, t: float, *, rtol: float = 1e-12) -> PhasePoint:
    """Spectral phase at (lam, t).

    t > 0: QuasiHermitian (all eigenvalues real).  For t < 0:
    DisconnectedComplex when t lies strictly between t_c and t_cr (the
    phase holding the two complex blobs, which contains t = -1);
    ThreeRealIntervals when t_r exists and t lies strictly between t_r
    and t_cr on the far side; ConnectedSingle otherwise.  Points within
    rtol of a critical value classify to the transition side and carry
    the on_boundary flag.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lam must lie in (0, 1), got {lam}")
    if t == 0:
        raise ValueError("t must be nonzero")
    if t > 0:
        return PhasePoint(PhaseLabel.QUASI_HERMITIAN, on_boundary=False)
    cc = critical_curves(lam)

    def near(a: float, b: float) -> bool:
        return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))

    on_cr = near(t, cc.t_cr)
    on_c = near(t, cc.t_c)
    on_r = cc.t_r is not None and near(t, cc.t_r)
    if on_cr and on_c:
        # the triple point (1/2, -1): the full complex disk
        return PhasePoint(PhaseLabel.DISCONNECTED_COMPLEX, on_boundary=True)
    if on_cr or on_r:
        return PhasePoint(PhaseLabel.THREE_REAL_INTERVALS, on_boundary=True)
    if on_c:
        return PhasePoint(PhaseLabel.DISCONNECTED_COMPLEX, on_boundary=True)
    lo, hi = sorted((cc.t_c, cc.t_cr))
    if lo < t < hi:
        return PhasePoint(PhaseLabel.DISCONNECTED_COMPLEX, on_boundary=False)
    if cc.t_r is not None:
        lo, hi = sorted((cc.t_r, cc.t_cr))
        if lo < t < hi:
            return PhasePoint(PhaseLabel.THREE_REAL_INTERVALS, on_boundary=False)
    return PhasePoint(PhaseLabel.CONNECTED_SINGLE, on_boundary=False)


@dataclass(frozen=True)
class RealDensityCurve:
    """Tabulated real-axis density on a grid, with its parameters."""

    xs: NDArray[np.float64]
    rho: NDArray[np.float64]
    lam: float
    t: float
    m: float


def real_density_curve(lam: float, t: float, m: float = 1.0, xs=None, grid: int = 512) -> RealDensityCurve:
    """Tabulate the real density: closed form at t = -1, cubic roots otherwise."""
    if xs is None:
        if t == -1.0:
            a = support_endpoint_a(lam, m)
            xs = np.linspace(-a, a, grid)
        else:
            sup = support_intervals(lam, t, m)
            ext = max((abs(lo) for lo, hi in sup.intervals), default=1.0 / m)
            ext = max(ext, max((abs(hi) for lo, hi in sup.intervals), default=1.0 / m))
            xs = np.linspace(-1.1 * ext, 1.1 * ext, grid)
    xs = np.asarray(xs, dtype=float)
    if t == -1.0:
        rho = rho_real_closed_form(xs, lam, m)
    else:
        rho = rho_real_general(xs, lam, t, m)
    return RealDensityCurve(xs=xs, rho=np.asarray(rho, dtype=float), lam=lam, t=t, m=m)
