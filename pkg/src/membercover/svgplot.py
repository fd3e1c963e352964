"""SVG rendering of instances and covers.

Output is static SVG 1.1 for offline inspection: squares as boxes,
halfplanes as strips clipped to the viewport, mandatory points as filled
dots, monitored points as open dots, and the chosen cover highlighted.
Floats appear only here, at the presentation boundary.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .geometry import Halfplane, Point, UnitSquare
from .instances import KIND_SQUARES, InstanceDoc

_MARGIN = Fraction(1)
_SCALE = 64


def _bounds(doc: InstanceDoc) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    xs = [p.x for p in doc.s] + [p.x for p in doc.sprime]
    ys = [p.y for p in doc.s] + [p.y for p in doc.sprime]
    for r in doc.ranges:
        if isinstance(r, UnitSquare):
            xs.extend((r.tr.x - 1, r.tr.x))
            ys.extend((r.tr.y - 1, r.tr.y))
    if not xs:
        xs = [Fraction(0), Fraction(1)]
    if not ys:
        ys = [Fraction(0), Fraction(1)]
    return (
        min(xs) - _MARGIN,
        min(ys) - _MARGIN,
        max(xs) + _MARGIN,
        max(ys) + _MARGIN,
    )


def _clip_halfplane(
    h: Halfplane, box: tuple[Fraction, Fraction, Fraction, Fraction]
) -> list[Point]:
    """Vertices of halfplane-cap-box, clipping the box polygon once."""
    xmin, ymin, xmax, ymax = box
    poly = [
        Point(xmin, ymin),
        Point(xmax, ymin),
        Point(xmax, ymax),
        Point(xmin, ymax),
    ]
    out: list[Point] = []
    for i, cur in enumerate(poly):
        nxt = poly[(i + 1) % len(poly)]
        cur_in = h.contains(cur)
        nxt_in = h.contains(nxt)
        if cur_in:
            out.append(cur)
        if cur_in != nxt_in:
            num = -(h.a * cur.x + h.b * cur.y + h.c)
            den = h.a * (nxt.x - cur.x) + h.b * (nxt.y - cur.y)
            t = Fraction(num, den)
            out.append(Point(cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)))
    return out


def _fmt(v: Fraction) -> str:
    return f"{float(v):.3f}"


def render_svg(doc: InstanceDoc, cover_ids: Iterable[int] = ()) -> str:
    """Build the SVG text for an instance, highlighting the given cover."""
    chosen = set(cover_ids)
    xmin, ymin, xmax, ymax = _bounds(doc)
    width = float((xmax - xmin) * _SCALE)
    height = float((ymax - ymin) * _SCALE)

    def sx(x: Fraction) -> str:
        return _fmt((x - xmin) * _SCALE)

    def sy(y: Fraction) -> str:
        # flip: SVG y grows downward
        return _fmt((ymax - y) * _SCALE)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}">',
        '<rect class="bg" width="100%" height="100%" fill="white"/>',
    ]
    for r in doc.ranges:
        picked = r.id in chosen
        style = (
            'fill="#fb8500" fill-opacity="0.25" stroke="#d00000" stroke-width="1.5"'
            if picked
            else 'fill="#8ecae6" fill-opacity="0.12" stroke="#219ebc" stroke-width="0.7"'
        )
        cls = "range cover" if picked else "range"
        if doc.kind == KIND_SQUARES:
            x0, y0 = r.tr.x - 1, r.tr.y
            w = h = _fmt(Fraction(_SCALE))
            parts.append(
                f'<rect class="{cls}" data-id="{r.id}" x="{sx(x0)}" y="{sy(y0)}" '
                f'width="{w}" height="{h}" {style}/>'
            )
        else:
            poly = _clip_halfplane(r, (xmin, ymin, xmax, ymax))
            points = " ".join(f"{sx(p.x)},{sy(p.y)}" for p in poly)
            parts.append(
                f'<polygon class="{cls}" data-id="{r.id}" points="{points}" {style}/>'
            )
    for p in doc.s:
        parts.append(
            f'<circle class="point-s" cx="{sx(p.x)}" cy="{sy(p.y)}" r="2.5" fill="#023047"/>'
        )
    for p in doc.sprime:
        parts.append(
            f'<circle class="point-sprime" cx="{sx(p.x)}" cy="{sy(p.y)}" r="2.5" '
            'fill="none" stroke="#9d0208" stroke-width="1.2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
