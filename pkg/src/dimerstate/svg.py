"""Minimal self-contained SVG emission: line plots and rect-grid heatmaps.

Output is deterministic (fixed number formatting, no timestamps), so the
same data always gives byte-identical files.
"""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

__all__ = ["color_ramp", "line_plot", "heatmap"]

W, H = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 80, 110, 40, 60
_LINE_COLORS = ("#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad")


def color_ramp(n: int = 256) -> list[str]:
    """``n`` hex colours running linearly from blue to red."""
    t = np.linspace(0.0, 1.0, n)
    r = np.rint(255 * t).astype(int)
    b = np.rint(255 * (1 - t)).astype(int)
    g = np.rint(60 * (1 - np.abs(2 * t - 1))).astype(int)
    return [f"#{ri:02x}{gi:02x}{bi:02x}" for ri, gi, bi in zip(r, g, b)]


RAMP = color_ramp()


def _f(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> np.ndarray:
    return np.linspace(lo, hi, n)


def _frame(title, xlabel, ylabel, xlim, ylim) -> list[str]:
    pw, ph = W - LEFT - RIGHT, H - TOP - BOTTOM
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" '
        'font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<text x="{W / 2}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{LEFT + pw / 2}" y="{H - 15}" text-anchor="middle">{escape(xlabel)}</text>',
        f'<text x="20" y="{TOP + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 20 {TOP + ph / 2})">{escape(ylabel)}</text>',
    ]
    for v in _ticks(*xlim):
        x = LEFT + (v - xlim[0]) / (xlim[1] - xlim[0]) * pw
        out.append(f'<line x1="{_f(x)}" y1="{TOP + ph}" x2="{_f(x)}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{_f(x)}" y="{TOP + ph + 18}" text-anchor="middle">{v:.4g}</text>')
    for v in _ticks(*ylim):
        y = TOP + ph - (v - ylim[0]) / (ylim[1] - ylim[0]) * ph
        out.append(f'<line x1="{LEFT - 5}" y1="{_f(y)}" x2="{LEFT}" y2="{_f(y)}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{_f(y + 4)}" text-anchor="end">{v:.4g}</text>')
    return out


def _limits(a) -> tuple[float, float]:
    lo, hi = float(np.min(a)), float(np.max(a))
    if lo == hi:
        pad = abs(lo) * 0.05 or 1.0
        return lo - pad, hi + pad
    return lo, hi


def line_plot(x, ys, labels=None, *, title="", xlabel="", ylabel="", markers=None) -> str:
    """One or more curves sharing an x axis; ``markers`` adds unconnected points ``(x, y, label)``."""
    x = np.asarray(x, dtype=float)
    ys = [np.asarray(y, dtype=float) for y in (ys if isinstance(ys, (list, tuple)) else [ys])]
    labels = labels or [""] * len(ys)
    all_x = [x] + ([np.asarray(markers[0], float)] if markers else [])
    all_y = ys + ([np.asarray(markers[1], float)] if markers else [])
    xlim = _limits(np.concatenate(all_x))
    ylim = _limits(np.concatenate(all_y))
    pw, ph = W - LEFT - RIGHT, H - TOP - BOTTOM

    def sx(v):
        return LEFT + (v - xlim[0]) / (xlim[1] - xlim[0]) * pw

    def sy(v):
        return TOP + ph - (v - ylim[0]) / (ylim[1] - ylim[0]) * ph

    out = _frame(title, xlabel, ylabel, xlim, ylim)
    for i, (y, lab) in enumerate(zip(ys, labels)):
        color = _LINE_COLORS[i % len(_LINE_COLORS)]
        pts = " ".join(f"{_f(sx(a))},{_f(sy(b))}" for a, b in zip(x, y))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>')
        if lab:
            out.append(f'<text x="{W - RIGHT + 8}" y="{TOP + 15 + 16 * i}" fill="{color}">{escape(lab)}</text>')
    if markers:
        mx, my = np.asarray(markers[0], float), np.asarray(markers[1], float)
        for a, b in zip(mx, my):
            out.append(f'<circle cx="{_f(sx(a))}" cy="{_f(sy(b))}" r="3.5" fill="black"/>')
        if len(markers) > 2 and markers[2]:
            out.append(f'<text x="{W - RIGHT + 8}" y="{TOP + 15 + 16 * len(ys)}">{escape(markers[2])}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def heatmap(x, y, z, *, title="", xlabel="", ylabel="", zlim=(0.0, 1.0), zlabel="") -> str:
    """Rect-grid heatmap with ``z[i, j]`` drawn at ``(x[j], y[i])``; y increases upward."""
    x, y, z = np.asarray(x, float), np.asarray(y, float), np.asarray(z, float)
    nx, ny = x.size, y.size
    xlim, ylim = _limits(x), _limits(y)
    pw, ph = W - LEFT - RIGHT, H - TOP - BOTTOM
    cw, ch = pw / nx, ph / ny
    span = (zlim[1] - zlim[0]) or 1.0
    idx = np.clip(np.rint((z - zlim[0]) / span * (len(RAMP) - 1)), 0, len(RAMP) - 1).astype(int)
    out = _frame(title, xlabel, ylabel, xlim, ylim)
    for i in range(ny):
        yy = TOP + ph - (i + 1) * ch
        for j in range(nx):
            out.append(f'<rect x="{_f(LEFT + j * cw)}" y="{_f(yy)}" width="{_f(cw + 0.5)}" '
                       f'height="{_f(ch + 0.5)}" fill="{RAMP[idx[i, j]]}"/>')
    # colour bar
    bx = W - RIGHT + 20
    for k in range(0, len(RAMP), 8):
        by = TOP + ph - (k + 8) / len(RAMP) * ph
        out.append(f'<rect x="{bx}" y="{_f(by)}" width="18" height="{_f(ph * 8 / len(RAMP) + 0.5)}" '
                   f'fill="{RAMP[k]}"/>')
    out.append(f'<text x="{bx + 22}" y="{TOP + 10}">{zlim[1]:.3g}</text>')
    out.append(f'<text x="{bx + 22}" y="{TOP + ph}">{zlim[0]:.3g}</text>')
    if zlabel:
        out.append(f'<text x="{bx}" y="{TOP - 8}">{escape(zlabel)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
