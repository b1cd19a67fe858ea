"""Standalone SVG scatterplots of pseudo-observations on the unit square."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .errors import DomainError

BLUE = (0, 0, 255)
RED = (255, 0, 0)
DARK_GREEN = (0, 170, 0)

_MARGIN_LEFT = 42
_MARGIN_RIGHT = 14
_MARGIN_TOP = 30
_MARGIN_BOTTOM = 36
_TICKS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)


@dataclass(frozen=True)
class PlotSpec:
    title: str = ""
    point_color: tuple = BLUE
    width: int = 350
    height: int = 350
    x_label: str = "u"
    y_label: str = "v"
    point_radius: float = 1.2
    opacity: float = 0.5

    def __post_init__(self):
        if self.width < 100 or self.height < 100:
            raise DomainError(f"canvas must be at least 100x100, got {self.width}x{self.height}")
        if len(self.point_color) != 3 or not all(0 <= int(c) <= 255 for c in self.point_color):
            raise DomainError(f"point_color must be an RGB triple, got {self.point_color!r}")

    @property
    def side(self) -> float:
        """Edge length in pixels of the drawn unit square."""
        return float(min(self.width - _MARGIN_LEFT - _MARGIN_RIGHT,
                         self.height - _MARGIN_TOP - _MARGIN_BOTTOM))


def parse_color(text: str) -> tuple:
    """``#rrggbb`` or ``r,g,b``."""
    t = text.strip()
    try:
        if t.startswith("#") and len(t) == 7:
            return tuple(int(t[i:i + 2], 16) for i in (1, 3, 5))
        parts = tuple(int(p) for p in t.split(","))
    except ValueError:
        raise DomainError(f"bad colour {text!r}") from None
    if len(parts) != 3:
        raise DomainError(f"bad colour {text!r}")
    return parts


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def panel_svg(points, spec: PlotSpec, x_offset: float = 0.0, y_offset: float = 0.0,
              panel_id: str = "panel") -> str:
    """An SVG ``<g>`` element with axes, labels and one circle per point."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    pts = np.clip(pts, 0.0, 1.0)
    side = spec.side
    x0 = x_offset + _MARGIN_LEFT
    y0 = y_offset + _MARGIN_TOP
    r, g, b = (int(c) for c in spec.point_color)
    out = [f'<g class="panel" id="{escape(panel_id)}">']
    out.append(f'<text class="title" x="{_fmt(x0 + side / 2)}" y="{_fmt(y_offset + 18)}" '
               f'text-anchor="middle" font-family="sans-serif" font-size="13">{escape(spec.title)}</text>')
    out.append(f'<rect class="unit-square" x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(side)}" '
               f'height="{_fmt(side)}" fill="none" stroke="black" stroke-width="1"/>')
    for t in _TICKS:
        tx = x0 + t * side
        ty = y0 + (1.0 - t) * side
        out.append(f'<line x1="{_fmt(tx)}" y1="{_fmt(y0 + side)}" x2="{_fmt(tx)}" '
                   f'y2="{_fmt(y0 + side + 4)}" stroke="black"/>')
        out.append(f'<text x="{_fmt(tx)}" y="{_fmt(y0 + side + 15)}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="9">{t:.1f}</text>')
        out.append(f'<line x1="{_fmt(x0 - 4)}" y1="{_fmt(ty)}" x2="{_fmt(x0)}" y2="{_fmt(ty)}" stroke="black"/>')
        out.append(f'<text x="{_fmt(x0 - 6)}" y="{_fmt(ty + 3)}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="9">{t:.1f}</text>')
    out.append(f'<text class="x-label" x="{_fmt(x0 + side / 2)}" y="{_fmt(y0 + side + 30)}" '
               f'text-anchor="middle" font-family="sans-serif" font-size="12">{escape(spec.x_label)}</text>')
    out.append(f'<text class="y-label" x="{_fmt(x0 - 30)}" y="{_fmt(y0 + side / 2)}" '
               f'text-anchor="middle" font-family="sans-serif" font-size="12">{escape(spec.y_label)}</text>')
    out.append(f'<g class="markers" fill="rgb({r},{g},{b})" fill-opacity="{spec.opacity:g}" stroke="none">')
    rad = _fmt(spec.point_radius)
    for u, v in pts:
        out.append(f'<circle cx="{_fmt(x0 + u * side)}" cy="{_fmt(y0 + (1.0 - v) * side)}" r="{rad}"/>')
    out.append("</g>")
    out.append("</g>")
    return "\n".join(out)


def _document(width, height, body) -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f"{body}\n</svg>\n"
    )


def scatter_svg(points, spec: PlotSpec) -> str:
    """A complete single-panel SVG document."""
    return _document(spec.width, spec.height, panel_svg(points, spec))


def figure_svg(panels, spacing: int = 20, caption: str | None = None) -> str:
    """Several ``(points, PlotSpec)`` panels side by side in one document."""
    x = 0.0
    parts = []
    height = 0
    for k, (points, spec) in enumerate(panels):
        parts.append(panel_svg(points, spec, x_offset=x, panel_id=f"panel-{k}"))
        x += spec.width + spacing
        height = max(height, spec.height)
    width = int(max(x - spacing, 100))
    if caption:
        parts.append(f'<text class="caption" x="{width / 2:.3f}" y="{height + 22}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="12">{escape(caption)}</text>')
        height += 34
    return _document(width, height, "\n".join(parts))
