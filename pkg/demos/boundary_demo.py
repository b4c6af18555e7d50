"""Complex eigenvalues at t=-1 against the two-radius boundary curve.

One large sample per lambda; eigenvalues scatter inside the analytic
region, which degenerates to the full disk of radius 1/m at lambda=1/2.
"""

import numpy as np

from pseudoherm import (
    MetricSpec,
    build_phi,
    boundary_curve,
    classify_spectrum,
    distance_to_axis,
    domain_area,
    eigenvalues,
    rho_complex_uniform,
    sample_gue,
)
from pseudoherm import svg


def scatter_one(lam, n=1024, seed=11):
    k = int(round(lam * n))
    spec = MetricSpec(n=n, k=k, t=-1.0)
    rng = np.random.default_rng(seed)
    phi = build_phi(sample_gue(n, 1.0, rng), spec)
    sp = classify_spectrum(eigenvalues(phi))
    z = sp.values[~sp.real_mask]

    bc = boundary_curve(lam)
    print(f"lambda={lam}: {z.size}/{n} complex, "
          f"area={domain_area(lam):.4f}, flat density={rho_complex_uniform(1.0):.4f}, "
          f"min distance to axis={distance_to_axis(lam):.4f}")

    canvas = svg.Canvas((-1.1, 1.1), (-1.1, 1.1),
                        title=f"complex spectrum, lambda={lam}, t=-1, N={n}")
    canvas.circles(z.real, z.imag, r=1.4)
    # the boundary comes as inner and outer radii over the validity wedge
    for sign in (1.0, -1.0):
        xs = np.concatenate([bc.r_plus * np.cos(bc.thetas), bc.r_minus[::-1] * np.cos(bc.thetas[::-1])])
        ys = sign * np.concatenate([bc.r_plus * np.sin(bc.thetas), bc.r_minus[::-1] * np.sin(bc.thetas[::-1])])
        canvas.polyline(xs, ys, color="#a52a2a", width=1.8)
    name = f"boundary_demo_lam{lam:.3f}".replace(".", "p") + ".svg"
    with open(name, "w", encoding="utf-8") as fh:
        fh.write(canvas.render())
    print(f"wrote {name}")


def main():
    for lam in (0.5, 0.25, 0.125):
        scatter_one(lam)


if __name__ == "__main__":
    main()
