"""Minimal SVG line plots and heatmaps, written as plain text."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf", "#8c564b")

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=150, top=40, bottom=55)


def _ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** np.floor(np.log10(raw))
    step = min((s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw), default=raw)
    start = np.ceil(lo / step) * step
    return [float(t) for t in np.arange(start, hi + 0.5 * step, step) if lo - 1e-12 <= t <= hi + 1e-12]


def _fmt(v):
    return f"{v:.4g}"


def _decimate(x, y, buckets):
    """Keep the min and max of each bucket so narrow peaks survive."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    if len(x) <= 4 * buckets:
        return x, y
    edges = np.linspace(0, len(x), buckets + 1).astype(int)
    keep = []
    for a, b in zip(edges[:-1], edges[1:]):
        seg = y[a:b]
        keep += sorted({a + int(np.argmin(seg)), a + int(np.argmax(seg))})
    keep = np.array(keep)
    return x[keep], y[keep]


class _Frame:
    def __init__(self, xlim, ylim, width=WIDTH, height=HEIGHT):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1.0
        self.width, self.height = width, height
        self.left = MARGIN["left"]
        self.right = width - MARGIN["right"]
        self.top = MARGIN["top"]
        self.bottom = height - MARGIN["bottom"]

    def px(self, x):
        return self.left + (np.asarray(x) - self.x0) / (self.x1 - self.x0) * (self.right - self.left)

    def py(self, y):
        return self.bottom - (np.asarray(y) - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top)

    def axes(self, title, xlabel, ylabel):
        out = [
            f'<rect x="{self.left}" y="{self.top}" width="{self.right - self.left}" '
            f'height="{self.bottom - self.top}" fill="none" stroke="black"/>'
        ]
        for t in _ticks(self.x0, self.x1):
            X = self.px(t)
            out.append(f'<line x1="{X:.2f}" y1="{self.bottom}" x2="{X:.2f}" y2="{self.bottom + 5}" stroke="black"/>')
            out.append(f'<text x="{X:.2f}" y="{self.bottom + 20}" text-anchor="middle">{_fmt(t)}</text>')
        for t in _ticks(self.y0, self.y1):
            Y = self.py(t)
            out.append(f'<line x1="{self.left - 5}" y1="{Y:.2f}" x2="{self.left}" y2="{Y:.2f}" stroke="black"/>')
            out.append(f'<text x="{self.left - 8}" y="{Y + 4:.2f}" text-anchor="end">{_fmt(t)}</text>')
        mid_x = 0.5 * (self.left + self.right)
        mid_y = 0.5 * (self.top + self.bottom)
        out.append(f'<text x="{mid_x:.1f}" y="{self.top - 14}" text-anchor="middle" font-size="15">{escape(title)}</text>')
        out.append(f'<text x="{mid_x:.1f}" y="{self.height - 12}" text-anchor="middle">{escape(xlabel)}</text>')
        out.append(
            f'<text x="18" y="{mid_y:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 18 {mid_y:.1f})">{escape(ylabel)}</text>'
        )
        return out


def _document(width, height, body):
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">'
    )
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>"]) + "\n"


def line_plot(series, title="", xlabel="", ylabel="", ylim=None) -> str:
    """``series`` is a list of (label, x, y)."""
    xs = np.concatenate([np.asarray(x, float) for _, x, _ in series])
    ys = np.concatenate([np.asarray(y, float) for _, _, y in series])
    if ylim is None:
        ylim = (min(0.0, float(ys.min())), float(ys.max()) * 1.05 if ys.max() > 0 else 1.0)
    frame = _Frame((float(xs.min()), float(xs.max())), ylim)
    body = frame.axes(title, xlabel, ylabel)
    for k, (label, x, y) in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        x, y = _decimate(x, y, int(frame.right - frame.left))
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(frame.px(x), frame.py(y)))
        body.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = frame.top + 16 * k + 10
        body.append(f'<line x1="{frame.right + 10}" y1="{ly}" x2="{frame.right + 30}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        body.append(f'<text x="{frame.right + 35}" y="{ly + 4}">{escape(label)}</text>')
    return _document(frame.width, frame.height, body)


def _colormap(t):
    # white -> blue -> dark red, piecewise linear
    stops = np.array([[255, 255, 255], [49, 130, 189], [165, 15, 21]], float)
    t = float(np.clip(t, 0.0, 1.0)) * (len(stops) - 1)
    i = min(int(t), len(stops) - 2)
    c = stops[i] + (t - i) * (stops[i + 1] - stops[i])
    return "#%02x%02x%02x" % tuple(int(round(v)) for v in c)


def heatmap(x, y, z, title="", xlabel="", ylabel="", zlabel="", max_cells=(200, 120)) -> str:
    """``z[i, j]`` is plotted at (x[j], y[i])."""
    x, y, z = np.asarray(x, float), np.asarray(y, float), np.asarray(z, float)
    step_y = max(1, int(np.ceil(len(y) / max_cells[1])))
    step_x = max(1, int(np.ceil(len(x) / max_cells[0])))
    x, y, z = x[::step_x], y[::step_y], z[::step_y, ::step_x]
    frame = _Frame((float(x[0]), float(x[-1])), (float(y[0]), float(y[-1])))
    zlo, zhi = float(z.min()), float(z.max())
    span = zhi - zlo if zhi > zlo else 1.0
    cw = (frame.right - frame.left) / len(x)
    ch = (frame.bottom - frame.top) / len(y)
    body = []
    for i in range(len(y)):
        for j in range(len(x)):
            X = frame.left + j * cw
            Y = frame.bottom - (i + 1) * ch
            body.append(
                f'<rect x="{X:.2f}" y="{Y:.2f}" width="{cw + 0.3:.2f}" height="{ch + 0.3:.2f}" '
                f'fill="{_colormap((z[i, j] - zlo) / span)}"/>'
            )
    body += frame.axes(title, xlabel, ylabel)
    bar_x = frame.right + 20
    for k in range(50):
        Y = frame.bottom - (k + 1) * (frame.bottom - frame.top) / 50
        body.append(
            f'<rect x="{bar_x}" y="{Y:.2f}" width="15" height="{(frame.bottom - frame.top) / 50 + 0.3:.2f}" '
            f'fill="{_colormap((k + 0.5) / 50)}"/>'
        )
    body.append(f'<text x="{bar_x + 20}" y="{frame.top + 8}">{_fmt(zhi)}</text>')
    body.append(f'<text x="{bar_x + 20}" y="{frame.bottom}">{_fmt(zlo)}</text>')
    body.append(f'<text x="{bar_x}" y="{frame.top - 8}">{escape(zlabel)}</text>')
    return _document(frame.width, frame.height, body)
