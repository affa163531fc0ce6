"""Tiny dependency-free SVG plot writer.

Produces self-contained SVG strings for the report bundle: line plots
(loss curves), the ROC curve, 2x2 confusion heatmaps, and horizontal bar
charts (feature importances). Deliberately minimal; deterministic output
for identical inputs.
"""

from __future__ import annotations

import math

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 70, 20, 40, 50
_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="24" text-anchor="middle" font-size="15">{_esc(title)}</text>',
    ]


def _footer(text: str, height: float = _H) -> list[str]:
    if not text:
        return []
    return [f'<text x="{_W - 6}" y="{height - 4}" text-anchor="end" '
            f'font-size="9" fill="#777">{_esc(text)}</text>']


def _axes(xlabel: str, ylabel: str) -> list[str]:
    x0, y0 = _ML, _H - _MB
    x1, y1 = _W - _MR, _MT
    return [
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{(x0 + x1) / 2}" y="{_H - 12}" text-anchor="middle">{_esc(xlabel)}</text>',
        f'<text x="16" y="{(y0 + y1) / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(y0 + y1) / 2})">{_esc(ylabel)}</text>',
    ]


def _scale(vmin: float, vmax: float, lo: float, hi: float):
    span = vmax - vmin if vmax > vmin else 1.0
    return lambda v: lo + (v - vmin) / span * (hi - lo)


def _ticks(vmin: float, vmax: float, n: int = 5) -> list[float]:
    if vmax <= vmin:
        return [vmin]
    step = (vmax - vmin) / (n - 1)
    return [vmin + i * step for i in range(n)]


def line_plot(series: dict[str, list[float]], title: str = "",
              xlabel: str = "x", ylabel: str = "y", footer: str = "") -> str:
    """One polyline per named series, indexed 1..len on the x axis."""
    all_y = [v for ys in series.values() for v in ys if math.isfinite(v)]
    if not all_y:
        all_y = [0.0, 1.0]
    ymin, ymax = min(all_y), max(all_y)
    if ymin == ymax:
        ymin, ymax = ymin - 0.5, ymax + 0.5
    xmax = max((len(ys) for ys in series.values()), default=1)
    sx = _scale(1, max(xmax, 2), _ML, _W - _MR)
    sy = _scale(ymin, ymax, _H - _MB, _MT)

    parts = _header(title) + _axes(xlabel, ylabel)
    for tick in _ticks(ymin, ymax):
        y = sy(tick)
        parts.append(f'<line x1="{_ML - 4}" y1="{y:.2f}" x2="{_ML}" y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{y + 4:.2f}" text-anchor="end">{tick:.4g}</text>')
    for tick in _ticks(1, xmax):
        x = sx(tick)
        parts.append(f'<line x1="{x:.2f}" y1="{_H - _MB}" x2="{x:.2f}" y2="{_H - _MB + 4}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{_H - _MB + 18}" text-anchor="middle">{tick:.4g}</text>')
    for i, (name, ys) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{sx(k + 1):.2f},{sy(v):.2f}" for k, v in enumerate(ys))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<text x="{_W - _MR - 6}" y="{_MT + 16 * (i + 1)}" text-anchor="end" '
                     f'fill="{color}">{_esc(name)}</text>')
    parts.extend(_footer(footer))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def roc_plot(fpr: list[float], tpr: list[float], auc: float,
             footer: str = "") -> str:
    sx = _scale(0.0, 1.0, _ML, _W - _MR)
    sy = _scale(0.0, 1.0, _H - _MB, _MT)
    parts = _header(f"ROC curve (AUC = {auc:.3f})")
    parts += _axes("false positive rate", "true positive rate")
    for tick in _ticks(0.0, 1.0):
        x, y = sx(tick), sy(tick)
        parts.append(f'<text x="{_ML - 8}" y="{y + 4:.2f}" text-anchor="end">{tick:.1f}</text>')
        parts.append(f'<text x="{x:.2f}" y="{_H - _MB + 18}" text-anchor="middle">{tick:.1f}</text>')
    parts.append(f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(1):.2f}" y2="{sy(1):.2f}" '
                 f'stroke="#999" stroke-dasharray="4 4"/>')
    pts = " ".join(f"{sx(f):.2f},{sy(t):.2f}" for f, t in zip(fpr, tpr))
    parts.append(f'<polyline fill="none" stroke="{_COLORS[0]}" stroke-width="2" points="{pts}"/>')
    parts.extend(_footer(footer))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def confusion_heatmap(tp: int, tn: int, fp: int, fn: int,
                      footer: str = "") -> str:
    """2x2 heatmap, rows = actual (fire, no fire), columns = predicted."""
    total = max(tp + tn + fp + fn, 1)
    cells = [
        ("actual fire / predicted fire", tp, 0, 0),
        ("actual fire / predicted no fire", fn, 1, 0),
        ("actual no fire / predicted fire", fp, 0, 1),
        ("actual no fire / predicted no fire", tn, 1, 1),
    ]
    size = 140
    ox, oy = 180, 90
    parts = _header("confusion matrix")
    parts.append(f'<text x="{ox + size}" y="{oy - 34}" text-anchor="middle">predicted</text>')
    parts.append(f'<text x="{ox + size / 2}" y="{oy - 12}" text-anchor="middle">fire</text>')
    parts.append(f'<text x="{ox + 1.5 * size}" y="{oy - 12}" text-anchor="middle">no fire</text>')
    parts.append(f'<text x="{ox - 58}" y="{oy + size}" text-anchor="middle" '
                 f'transform="rotate(-90 {ox - 58} {oy + size})">actual</text>')
    parts.append(f'<text x="{ox - 12}" y="{oy + size / 2}" text-anchor="end">fire</text>')
    parts.append(f'<text x="{ox - 12}" y="{oy + 1.5 * size}" text-anchor="end">no fire</text>')
    for _, count, col, row in cells:
        frac = count / total
        shade = int(255 - 155 * frac)
        x, y = ox + col * size, oy + row * size
        parts.append(f'<rect x="{x}" y="{y}" width="{size}" height="{size}" '
                     f'fill="rgb({shade},{shade},255)" stroke="black"/>')
        parts.append(f'<text x="{x + size / 2}" y="{y + size / 2 + 5}" '
                     f'text-anchor="middle" font-size="18">{count}</text>')
    parts.extend(_footer(footer))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def bar_chart(labels: list[str], values: list[float], title: str = "",
              xlabel: str = "value", footer: str = "") -> str:
    """Horizontal bars, tallest plot grows with the number of labels."""
    n = len(labels)
    row_h = 18
    height = _MT + _MB + max(n, 1) * row_h
    vmax = max(values) if values else 1.0
    sx = _scale(0.0, vmax if vmax > 0 else 1.0, 220, _W - _MR)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{height}" '
        f'viewBox="0 0 {_W} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{_W}" height="{height}" fill="white"/>',
        f'<text x="{_W / 2}" y="24" text-anchor="middle" font-size="15">{_esc(title)}</text>',
        f'<text x="{(220 + _W) / 2}" y="{height - 12}" text-anchor="middle">{_esc(xlabel)}</text>',
    ]
    for i, (label, value) in enumerate(zip(labels, values)):
        y = _MT + i * row_h
        parts.append(f'<text x="212" y="{y + 12}" text-anchor="end">{_esc(str(label))}</text>')
        parts.append(f'<rect x="220" y="{y + 2}" width="{max(sx(value) - 220, 0):.2f}" '
                     f'height="{row_h - 6}" fill="{_COLORS[0]}"/>')
        parts.append(f'<text x="{sx(value) + 4:.2f}" y="{y + 12}">{value:.4f}</text>')
    parts.extend(_footer(footer, height))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
