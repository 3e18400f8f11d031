"""Schedule rendering: plain-text lanes and a minimal SVG chart."""

from __future__ import annotations

from .schedule import Schedule

PX_PER_TIME_UNIT = 4
ROW_HEIGHT = 28
BAR_HEIGHT = 20
LEFT_MARGIN = 46
TOP_MARGIN = 24

_FILLS = ("#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2")


def text_lanes(s: Schedule) -> str:
    """One row per processor; each placement rendered as ``[start..finish) task``."""
    lines = []
    for p, row in enumerate(s.lanes()):
        cells = " ".join(f"[{st}..{fin}) {t}" for st, fin, t in row)
        lines.append(f"P{p} | {cells}".rstrip())
    return "\n".join(lines) + "\n"


def render_svg(s: Schedule) -> str:
    """SVG chart at a fixed 4 px per time unit, one lane per processor."""
    width = LEFT_MARGIN + max(1, s.makespan) * PX_PER_TIME_UNIT + 16
    height = TOP_MARGIN + s.processor_count * ROW_HEIGHT + 8
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" font-family="monospace" font-size="11">',
        f'<text x="{LEFT_MARGIN}" y="14">makespan {s.makespan} '
        f"({PX_PER_TIME_UNIT} px per time unit)</text>",
    ]
    for p, row in enumerate(s.lanes()):
        y = TOP_MARGIN + p * ROW_HEIGHT
        parts.append(
            f'<text x="4" y="{y + BAR_HEIGHT - 5}">P{p}</text>'
        )
        for st, fin, t in row:
            x = LEFT_MARGIN + st * PX_PER_TIME_UNIT
            w = max(1, (fin - st) * PX_PER_TIME_UNIT)
            fill = _FILLS[t % len(_FILLS)]
            parts.append(
                f'<rect x="{x}" y="{y}" width="{w}" height="{BAR_HEIGHT}" '
                f'fill="{fill}" stroke="#333"/>'
            )
            parts.append(
                f'<text x="{x + 2}" y="{y + BAR_HEIGHT - 5}" fill="#fff">{t}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
