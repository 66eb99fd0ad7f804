"""Image documents, point-set syntax, and plain-text rendering.

Two input forms are accepted:

* JSON: ``{"dim": 2, "adjacency": 2, "points": [[0, 1], ...], "name": "kite"}``
* ASCII grid (dim 2 only): ``#`` is a black point, ``.`` a white one. Column
  c is x = c; the bottom row is y = 0, so the top row carries the largest y.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Sequence

from freezeset.errors import ImageError
from freezeset.lattice import DigitalImage, Point

GRID_CONVENTION = "grid: x = column (left = 0), y = row counted from the bottom (bottom = 0)"

_POINT_RE = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)")


def format_point(p: Sequence[int]) -> str:
    return "(" + ",".join(str(c) for c in p) + ")"


def format_points(ps: Iterable[Sequence[int]], sep: str = " ") -> str:
    return sep.join(format_point(p) for p in sorted(tuple(p) for p in ps))


def parse_point_set(text: str) -> tuple[Point, ...]:
    """Parse ``"(x,y);(x,y);..."``. An empty string is the empty set."""
    items = [s.strip() for s in text.split(";") if s.strip()]
    out = []
    for item in items:
        m = _POINT_RE.fullmatch(item)
        if not m:
            raise ImageError(f"malformed point {item!r}; expected (x,y,...)")
        out.append(tuple(int(c) for c in m.group(1).split(",")))
    return tuple(sorted(set(out)))


def parse_grid(text: str, adjacency: int = 1, name: str | None = None) -> DigitalImage:
    rows = [r for r in text.splitlines() if r != ""]
    if not rows:
        raise ImageError("empty grid")
    bad = set("".join(rows)) - {"#", "."}
    if bad:
        raise ImageError(f"grid may only contain '#', '.' and newlines; found {sorted(bad)}")
    height = len(rows)
    points = [(x, height - 1 - r) for r, row in enumerate(rows) for x, ch in enumerate(row) if ch == "#"]
    if not points:
        raise ImageError("grid has no black points")
    return DigitalImage(points, adjacency, 2, name)


def image_from_dict(doc: dict) -> DigitalImage:
    if not isinstance(doc, dict):
        raise ImageError("image document must be a JSON object")
    try:
        dim = int(doc["dim"])
        u = int(doc["adjacency"])
        points = doc["points"]
    except KeyError as exc:
        raise ImageError(f"image document is missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ImageError(f"bad image header: {exc}") from None
    if not isinstance(points, list):
        raise ImageError("'points' must be a list of coordinate lists")
    name = doc.get("name")
    return DigitalImage(points, u, dim, name, allow_duplicates=False)


def parse_image(source: str, adjacency: int | None = None, name: str | None = None) -> DigitalImage:
    """Parse a JSON document or an ASCII grid.

    ``adjacency`` applies to grids only (default 1); JSON documents carry
    their own.
    """
    stripped = source.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ImageError(f"invalid JSON: {exc}") from None
        return image_from_dict(doc)
    return parse_grid(stripped, 1 if adjacency is None else adjacency, name)


def image_to_dict(X: DigitalImage) -> dict:
    doc: dict = {"dim": X.dim, "adjacency": X.u, "points": [list(p) for p in X.points]}
    if X.name:
        doc["name"] = X.name
    return doc


def serialize_image(X: DigitalImage) -> str:
    return json.dumps(image_to_dict(X), sort_keys=True) + "\n"


def render_ascii(X: DigitalImage, highlight: Iterable[Sequence[int]] = ()) -> str:
    """Draw a 2D image over its bounding box: '#' point, '@' highlighted point, '.' empty."""
    if X.dim != 2:
        raise ImageError("rendering needs a 2-dimensional image")
    marked = {tuple(p) for p in highlight}
    xs = [p[0] for p in X.points]
    ys = [p[1] for p in X.points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    lines = [f"origin (bottom-left): ({x0},{y0})"]
    for y in range(y1, y0 - 1, -1):
        row = []
        for x in range(x0, x1 + 1):
            if (x, y) in marked:
                row.append("@")
            elif (x, y) in X:
                row.append("#")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines) + "\n"


def render_svg(X: DigitalImage, highlight: Iterable[Sequence[int]] = (), cell: int = 40) -> str:
    """Points as dots, adjacencies as segments, highlighted points filled red."""
    if X.dim != 2:
        raise ImageError("rendering needs a 2-dimensional image")
    marked = {tuple(p) for p in highlight}
    xs = [p[0] for p in X.points]
    ys = [p[1] for p in X.points]
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0 + 2) * cell
    height = (y1 - min(ys) + 2) * cell

    def sx(p: Sequence[int]) -> int:
        return (p[0] - x0 + 1) * cell

    def sy(p: Sequence[int]) -> int:
        return (y1 - p[1] + 1) * cell

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i, p in enumerate(X.points):
        for j in X.neighbor_indices(i):
            if j > i:
                q = X.points[j]
                out.append(
                    f'<line x1="{sx(p)}" y1="{sy(p)}" x2="{sx(q)}" y2="{sy(q)}" '
                    'stroke="black" stroke-width="2"/>'
                )
    for p in X.points:
        fill = "red" if p in marked else "black"
        out.append(f'<circle cx="{sx(p)}" cy="{sy(p)}" r="{cell // 6}" fill="{fill}"/>')
        out.append(
            f'<text x="{sx(p) + cell // 5}" y="{sy(p) - cell // 5}" font-size="{cell // 4}">'
            f"{format_point(p)}</text>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
