"""Minimal static SVG 1.1 emitters for scatter, line, and heatmap figures.

Hand-rolled on purpose: the figures are simple enough that a plotting
dependency would dominate the install for no benefit, and byte-identical
output for identical data is part of the reproducibility contract.  All
coordinates are formatted to fixed precision so documents are stable
across platforms.
"""

from __future__ import annotations

import numpy as np

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 64, 20, 36, 48  # margins: left, right, top, bottom


def _f(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10.0 ** np.floor(np.log10(raw))
    step = min(s * mag for s in (1.0, 2.0, 5.0, 10.0) if s * mag >= raw)
    first = np.ceil(lo / step) * step
    return [float(v) for v in np.arange(first, hi + step * 1e-9, step)]


class Canvas:
    """One plot area with data-space mapping, axes, and primitive shapes."""

    def __init__(self, xlim: tuple[float, float], ylim: tuple[float, float],
                 title: str = "", xlabel: str = "", ylabel: str = ""):
        self.xlim = xlim
        self.ylim = ylim
        self.body: list[str] = []
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel

    def px(self, x: float) -> float:
        lo, hi = self.xlim
        return _ML + (x - lo) / (hi - lo) * (_W - _ML - _MR)

    def py(self, y: float) -> float:
        lo, hi = self.ylim
        return _H - _MB - (y - lo) / (hi - lo) * (_H - _MT - _MB)

    def polyline(self, xs, ys, color: str = "#1f3b73", width: float = 1.5) -> None:
        pts = " ".join(f"{_f(self.px(x))},{_f(self.py(y))}" for x, y in zip(xs, ys))
        self.body.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"/>'
        )

    def polygon(self, xs, ys, fill: str, opacity: float = 0.5) -> None:
        pts = " ".join(f"{_f(self.px(x))},{_f(self.py(y))}" for x, y in zip(xs, ys))
        self.body.append(f'<polygon points="{pts}" fill="{fill}" fill-opacity="{opacity}" stroke="none"/>')

    def circles(self, xs, ys, r: float = 1.6, color: str = "#1f3b73") -> None:
        parts = [
            f'<circle cx="{_f(self.px(x))}" cy="{_f(self.py(y))}" r="{r}" fill="{color}"/>'
            for x, y in zip(xs, ys)
        ]
        self.body.append("".join(parts))

    def rect(self, x0: float, y0: float, x1: float, y1: float, fill: str) -> None:
        xa, xb = sorted((self.px(x0), self.px(x1)))
        ya, yb = sorted((self.py(y0), self.py(y1)))
        self.body.append(
            f'<rect x="{_f(xa)}" y="{_f(ya)}" width="{_f(xb - xa)}" '
            f'height="{_f(yb - ya)}" fill="{fill}"/>'
        )

    def text(self, x_px: float, y_px: float, s: str, size: int = 12,
             anchor: str = "middle", color: str = "#202020") -> None:
        self.body.append(
            f'<text x="{_f(x_px)}" y="{_f(y_px)}" font-size="{size}" '
            f'font-family="sans-serif" text-anchor="{anchor}" fill="{color}">{s}</text>'
        )

    def render(self) -> str:
        frame = [
            f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
            f'height="{_H - _MT - _MB}" fill="none" stroke="#404040" stroke-width="1"/>'
        ]
        ticks = []
        for tx in _ticks(*self.xlim):
            px = self.px(tx)
            ticks.append(f'<line x1="{_f(px)}" y1="{_H - _MB}" x2="{_f(px)}" '
                         f'y2="{_H - _MB + 5}" stroke="#404040"/>')
            ticks.append(f'<text x="{_f(px)}" y="{_H - _MB + 18}" font-size="11" '
                         f'font-family="sans-serif" text-anchor="middle">{tx:g}</text>')
        for ty in _ticks(*self.ylim):
            py = self.py(ty)
            ticks.append(f'<line x1="{_ML - 5}" y1="{_f(py)}" x2="{_ML}" '
                         f'y2="{_f(py)}" stroke="#404040"/>')
            ticks.append(f'<text x="{_ML - 8}" y="{_f(py + 4)}" font-size="11" '
                         f'font-family="sans-serif" text-anchor="end">{ty:g}</text>')
        labels = []
        if self.title:
            labels.append(f'<text x="{_W / 2:.0f}" y="22" font-size="14" '
                          f'font-family="sans-serif" text-anchor="middle">{self.title}</text>')
        if self.xlabel:
            labels.append(f'<text x="{(_ML + _W - _MR) / 2:.0f}" y="{_H - 10}" font-size="12" '
                          f'font-family="sans-serif" text-anchor="middle">{self.xlabel}</text>')
        if self.ylabel:
            labels.append(
                f'<text x="16" y="{(_MT + _H - _MB) / 2:.0f}" font-size="12" '
                f'font-family="sans-serif" text-anchor="middle" '
                f'transform="rotate(-90 16 {(_MT + _H - _MB) / 2:.0f})">{self.ylabel}</text>'
            )
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">\n'
            '<rect width="100%" height="100%" fill="white"/>\n'
            + "\n".join(self.body + frame + ticks + labels)
            + "\n</svg>\n"
        )


def heatmap(canvas: Canvas, xedges, yedges, values, vmax: float | None = None) -> None:
    """Add per-cell shaded rectangles; darker means denser."""
    values = np.asarray(values, dtype=float)
    if vmax is None:
        vmax = float(values.max()) if values.size and values.max() > 0 else 1.0
    for i in range(values.shape[0]):
        for j in range(values.shape[1]):
            v = min(values[i, j] / vmax, 1.0)
            if v <= 0:
                continue
            shade = int(round(245 - 195 * v))
            canvas.rect(xedges[i], yedges[j], xedges[i + 1], yedges[j + 1],
                        fill=f"rgb({shade},{shade},255)")
