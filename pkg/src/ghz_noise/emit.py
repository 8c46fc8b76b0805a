"""Write run records as CSV, JSON or an SVG line chart."""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from collections import OrderedDict

BASE_COLUMNS = ("tau", "topology", "p", "g", "alpha")
SIG_DIGITS = 12


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    text = f"{float(value):.{SIG_DIGITS}g}"
    return "0" if text == "-0" else text


def _rows(records) -> list[dict]:
    rows = [r.as_dict() if hasattr(r, "as_dict") else dict(r) for r in records]
    if not rows:
        raise ValueError("no records to emit")
    return rows


def _series_columns(rows) -> list[str]:
    return [k for k in rows[0] if k not in BASE_COLUMNS and k != "lambda"]


def to_csv(records) -> str:
    rows = _rows(records)
    header = list(rows[0])
    lines = [",".join(header)]
    lines += [",".join(_fmt(row[k]) for k in header) for row in rows]
    return "\n".join(lines) + "\n"


def to_json(records) -> str:
    rows = _rows(records)
    out = [{k: (v if isinstance(v, str) else float(_fmt(v))) for k, v in row.items()} for row in rows]
    return json.dumps(out, indent=1) + "\n"


def _series(rows) -> "OrderedDict[str, list[tuple[float, float]]]":
    """One series per measure, split further by whichever parameter varies across rows."""
    varying = [k for k in ("topology", "p", "g", "alpha", "lambda") if k in rows[0] and len({r[k] for r in rows}) > 1]
    series: OrderedDict[str, list] = OrderedDict()
    for row in rows:
        tag = ", ".join(f"{k}={_fmt(row[k])}" for k in varying)
        for measure in _series_columns(rows):
            label = f"{measure} ({tag})" if tag else measure
            series.setdefault(label, []).append((float(row["tau"]), float(row[measure])))
    return series


_COLORS = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666")


def to_svg(records, width: int = 720, height: int = 440) -> str:
    rows = _rows(records)
    series = _series(rows)
    xs = [x for pts in series.values() for x, _ in pts]
    ys = [y for pts in series.values() for _, y in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    left, right, top, bottom = 70, 200, 20, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + (1.0 - (y - y0) / (y1 - y0)) * ph

    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(width), height=str(height))
    ET.SubElement(svg, "rect", x=str(left), y=str(top), width=str(pw), height=str(ph), fill="none", stroke="black")
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv, yv = x0 + frac * (x1 - x0), y0 + frac * (y1 - y0)
        ET.SubElement(svg, "text", x=f"{sx(xv):.2f}", y=str(top + ph + 18), **{"text-anchor": "middle", "font-size": "11"}).text = f"{xv:.3g}"
        ET.SubElement(svg, "text", x=str(left - 6), y=f"{sy(yv) + 4:.2f}", **{"text-anchor": "end", "font-size": "11"}).text = f"{yv:.3g}"
    ET.SubElement(svg, "text", x=str(left + pw / 2), y=str(height - 10), **{"text-anchor": "middle", "font-size": "13"}).text = "tau"
    ET.SubElement(svg, "text", x="16", y=str(top + ph / 2), transform=f"rotate(-90 16 {top + ph / 2})", **{"text-anchor": "middle", "font-size": "13"}).text = "value"

    for i, (label, pts) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        points = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        line = ET.SubElement(svg, "polyline", points=points, fill="none", stroke=color, **{"stroke-width": "1.5"})
        ET.SubElement(line, "title").text = label
        ly = top + 14 + 16 * i
        ET.SubElement(svg, "line", x1=str(left + pw + 10), y1=str(ly - 4), x2=str(left + pw + 30), y2=str(ly - 4), stroke=color)
        ET.SubElement(svg, "text", x=str(left + pw + 34), y=str(ly), **{"font-size": "11"}).text = label
    return ET.tostring(svg, encoding="unicode") + "\n"


WRITERS = {"csv": to_csv, "json": to_json, "svg": to_svg}


def render(records, fmt: str) -> str:
    try:
        writer = WRITERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}") from None
    return writer(records)


def emit(records, fmt: str, path) -> None:
    """Write ``records`` to ``path``. Raises ``OSError`` if the path is not writable."""
    text = render(records, fmt)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
