"""Self-contained SVG bar charts for feature contributions.

Fixed 800 x (40 * k) canvas: feature labels right-aligned on the left,
bars growing from a center axis, negative contributions to the left.
No plotting dependency; the output is deterministic for identical input.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

WIDTH = 800
ROW_HEIGHT = 40
_LABEL_X = 185
_PLOT_LEFT = 200
_PLOT_RIGHT = 780
_CENTER = (_PLOT_LEFT + _PLOT_RIGHT) / 2
_HALF_SPAN = _PLOT_RIGHT - _CENTER
_POSITIVE = "#3b6fb6"
_NEGATIVE = "#c0452e"


def contribution_bar_chart(items: list[tuple[str, float]]) -> str:
    """Render (feature, contribution) pairs as a horizontal bar chart."""
    if not items:
        raise ValueError("need at least one feature to plot")
    height = ROW_HEIGHT * len(items)
    scale = max(abs(v) for _, v in items) or 1.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="13">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>',
        f'<line x1="{_CENTER}" y1="0" x2="{_CENTER}" y2="{height}" '
        f'stroke="#555555" stroke-width="1"/>',
    ]
    for row, (name, value) in enumerate(items):
        y = row * ROW_HEIGHT
        bar_w = abs(value) / scale * _HALF_SPAN
        bar_x = _CENTER if value >= 0 else _CENTER - bar_w
        color = _POSITIVE if value >= 0 else _NEGATIVE
        text_y = y + ROW_HEIGHT / 2 + 4
        parts.append(
            f'<rect x="{bar_x:.2f}" y="{y + 8}" width="{bar_w:.2f}" '
            f'height="{ROW_HEIGHT - 16}" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{_LABEL_X}" y="{text_y:.1f}" text-anchor="end">{escape(name)}</text>'
        )
        value_x = bar_x + bar_w + 6 if value >= 0 else bar_x - 6
        anchor = "start" if value >= 0 else "end"
        parts.append(
            f'<text x="{value_x:.2f}" y="{text_y:.1f}" text-anchor="{anchor}" '
            f'fill="#333333">{value:+.4f}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def save_chart(items: list[tuple[str, float]], path: str | Path) -> None:
    Path(path).write_text(contribution_bar_chart(items), encoding="utf-8")
