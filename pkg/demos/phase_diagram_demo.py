"""Phase diagram in the (lambda, t) plane and the interval-splitting
sequence along t at lambda=3/4.

The three critical curves intersect at (1/2, -1); between t_c and t_cr
part of the spectrum is complex, and below t_cr the real support splits
into three intervals until they merge again at t_r.
"""

import numpy as np

from pseudoherm import critical_curves, phase_classify, support_intervals
from pseudoherm import svg


def main():
    lams = np.linspace(0.02, 0.98, 193)
    curves = [critical_curves(float(l)) for l in lams]
    t_floor = -8.0

    canvas = svg.Canvas((0.0, 1.0), (t_floor, 1.0), title="phase diagram")
    canvas.polyline(lams, [max(c.t_cr, t_floor) for c in curves], color="#a52a2a", width=2.0)
    canvas.polyline(lams, [max(c.t_c, t_floor) for c in curves], color="#1f3b73", width=2.0)
    has_r = [(l, c.t_r) for l, c in zip(lams, curves) if c.t_r is not None and c.t_r >= t_floor]
    canvas.polyline([p[0] for p in has_r], [p[1] for p in has_r], color="#2e7d32", width=2.0)
    with open("phase_diagram_demo.svg", "w", encoding="utf-8") as fh:
        fh.write(canvas.render())
    print("wrote phase_diagram_demo.svg")

    c = critical_curves(0.75)
    print(f"lambda=3/4: t_cr={c.t_cr:.4f}, t_c={c.t_c:.4f}, t_r={c.t_r:.6f}")
    for t in (-2.9, -3.0, -3.2, -3.5):
        pp = phase_classify(0.75, t)
        iv = support_intervals(0.75, t, 1.0)
        spans = ", ".join(f"[{lo:.4f}, {hi:.4f}]" for lo, hi in iv.intervals)
        flag = " (boundary)" if pp.on_boundary else ""
        print(f"  t={t}: {pp.label.name}{flag}; real support {spans}")


if __name__ == "__main__":
    main()
