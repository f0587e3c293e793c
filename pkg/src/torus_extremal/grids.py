"""Grid sweeps of the torus extremal function over leaf charts.

A chart parametrises a real plane of ``(z1, z2)`` values; every node is lifted
to the torus with :func:`variety.leaf_z3` and evaluated with
:func:`formulas.v_torus`.  Results serialise to CSV, JSON and SVG.
"""

import csv
import enum
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .formulas import OffVarietyError, v_torus
from .variety import ON_VARIETY_TOL, LeafIndex, TorusParams, leaf_point, membership_residual

CSV_COLUMNS = ("x", "y", "value", "branch", "residual")


class Chart(enum.Enum):
    LEAF_REAL_Z1Z2 = "LEAF_REAL_Z1Z2"
    LEAF_COMPLEX_Z1 = "LEAF_COMPLEX_Z1"


@dataclass(frozen=True)
class GridSpec:
    """A rectangular grid on a chart.

    With ``overlay`` the companion leaf (opposite ``outer_sign``) is evaluated
    too, giving a two-sheet multifunction; sheets are stored in that order.
    """

    chart: Chart
    leaf: LeafIndex
    x_range: tuple
    y_range: tuple
    nx: int
    ny: int
    params: TorusParams
    overlay: bool = False

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grids need nx, ny >= 2")
        for name, (lo, hi) in (("x_range", self.x_range), ("y_range", self.y_range)):
            if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
                raise ValueError(f"{name} must satisfy min < max, got ({lo}, {hi})")

    @property
    def leaves(self):
        if not self.overlay:
            return (self.leaf,)
        return (self.leaf, LeafIndex(-self.leaf.outer_sign, self.leaf.z3_sign))

    def xs(self):
        lo, hi = self.x_range
        return [lo + (hi - lo) * i / (self.nx - 1) for i in range(self.nx)]

    def ys(self):
        lo, hi = self.y_range
        return [lo + (hi - lo) * j / (self.ny - 1) for j in range(self.ny)]

    def to_dict(self):
        return {
            "chart": self.chart.value,
            "leaf": [self.leaf.outer_sign, self.leaf.z3_sign],
            "x_range": list(self.x_range),
            "y_range": list(self.y_range),
            "nx": self.nx,
            "ny": self.ny,
            "R": self.params.R,
            "r": self.params.r,
            "overlay": self.overlay,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            chart=Chart(d["chart"]),
            leaf=LeafIndex(*d["leaf"]),
            x_range=tuple(d["x_range"]),
            y_range=tuple(d["y_range"]),
            nx=int(d["nx"]),
            ny=int(d["ny"]),
            params=TorusParams(r=d["r"], R=d["R"]),
            overlay=bool(d.get("overlay", False)),
        )


@dataclass(frozen=True)
class GridNode:
    x: float
    y: float
    value: float
    branch: str
    residual: float

    @property
    def flagged(self):
        return not self.residual <= ON_VARIETY_TOL


@dataclass(frozen=True)
class GridResult:
    spec: GridSpec
    sheets: tuple  # one tuple of nodes per leaf, y-major then x

    def values(self, sheet=0):
        nodes = self.sheets[sheet]
        nx = self.spec.nx
        return [[n.value for n in nodes[j * nx:(j + 1) * nx]] for j in range(self.spec.ny)]

    def nodes(self):
        for sheet in self.sheets:
            yield from sheet

    def summary(self):
        vals = [n.value for n in self.nodes() if not math.isnan(n.value)]
        return {
            "min": min(vals) if vals else None,
            "max": max(vals) if vals else None,
            "zero_cells": sum(1 for v in vals if v == 0.0),
            "flagged_cells": sum(1 for n in self.nodes() if n.flagged),
        }


def chart_point(chart, x, y):
    """``(z1, z2)`` for chart coordinates ``(x, y)``."""
    if chart is Chart.LEAF_REAL_Z1Z2:
        return complex(x), complex(y)
    return complex(x, y), 0j


def _evaluate_row(args):
    spec, leaf, y = args
    row = []
    for x in spec.xs():
        z1, z2 = chart_point(spec.chart, x, y)
        z = leaf_point(spec.params, z1, z2, leaf)
        res = membership_residual(spec.params, z)
        try:
            ev = v_torus(spec.params, z)
            row.append(GridNode(x, y, ev.value, ev.active_branch.value, res))
        except OffVarietyError:
            row.append(GridNode(x, y, math.nan, "OFF_VARIETY", res))
    return row


def evaluate_grid(spec, workers=1):
    """Evaluate ``v_torus`` at every node of every sheet of ``spec``.

    Rows may be farmed out to ``workers`` processes; output order is fixed.
    """
    jobs = [(spec, leaf, y) for leaf in spec.leaves for y in spec.ys()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_row, jobs))
    else:
        rows = [_evaluate_row(j) for j in jobs]
    sheets = []
    for s in range(len(spec.leaves)):
        chunk = rows[s * spec.ny:(s + 1) * spec.ny]
        sheets.append(tuple(n for row in chunk for n in row))
    return GridResult(spec, tuple(sheets))


def _fmt(v):
    # repr is the shortest string that round-trips
    return repr(float(v))


def grid_to_csv(g):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for n in g.nodes():
        w.writerow((_fmt(n.x), _fmt(n.y), _fmt(n.value), n.branch, _fmt(n.residual)))
    return buf.getvalue()


def write_csv(g, path):
    _write_text(path, grid_to_csv(g))


def grid_to_json(g):
    doc = {
        "spec": g.spec.to_dict(),
        "sheets": [
            [[n.x, n.y, n.value, n.branch, n.residual] for n in sheet] for sheet in g.sheets
        ],
    }
    return json.dumps(doc, allow_nan=True) + "\n"


def write_json(g, path):
    _write_text(path, grid_to_json(g))


def grid_from_json(text):
    doc = json.loads(text)
    spec = GridSpec.from_dict(doc["spec"])
    sheets = tuple(tuple(GridNode(*row) for row in sheet) for sheet in doc["sheets"])
    return GridResult(spec, sheets)


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return grid_from_json(fh.read())


def _write_text(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


# -- SVG -------------------------------------------------------------------

_PALETTES = {
    "gray": [(0, 0, 0), (255, 255, 255)],
    "viridis": [(68, 1, 84), (59, 82, 139), (33, 145, 140), (94, 201, 98), (253, 231, 37)],
    "heat": [(0, 0, 0), (190, 30, 0), (255, 160, 0), (255, 255, 200)],
}
COLOR_MAPS = tuple(_PALETTES)


def _color(t, palette):
    t = min(1.0, max(0.0, t))
    stops = _PALETTES[palette]
    pos = t * (len(stops) - 1)
    i = min(int(pos), len(stops) - 2)
    f = pos - i
    a, b = stops[i], stops[i + 1]
    return "#%02x%02x%02x" % tuple(int(round(a[k] + (b[k] - a[k]) * f)) for k in range(3))


def grid_to_svg(g, color_map="viridis"):
    if color_map not in _PALETTES:
        raise ValueError(f"unknown color map {color_map!r}; choose from {', '.join(COLOR_MAPS)}")
    spec = g.spec
    cell, margin = 8, 40
    vmax = max((n.value for n in g.nodes() if not math.isnan(n.value)), default=0.0)
    panel_w, panel_h = spec.nx * cell, spec.ny * cell
    width = margin + len(g.sheets) * (panel_w + margin)
    height = panel_h + 2 * margin
    ax_names = ("z1", "z2") if spec.chart is Chart.LEAF_REAL_Z1Z2 else ("Re z1", "Im z1")
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for s, (leaf, sheet) in enumerate(zip(spec.leaves, g.sheets)):
        ox = margin + s * (panel_w + margin)
        out.append(f'<g class="sheet" data-leaf="{leaf.outer_sign},{leaf.z3_sign}">')
        for k, n in enumerate(sheet):
            i, j = k % spec.nx, k // spec.nx
            if math.isnan(n.value):
                fill = "#ff00ff"
            else:
                fill = _color(n.value / vmax if vmax > 0 else 0.0, color_map)
            # y grows upward in the chart
            y = margin + (spec.ny - 1 - j) * cell
            out.append(f'<rect class="cell" x="{ox + i * cell}" y="{y}" width="{cell}" height="{cell}" fill="{fill}"/>')
        out.append("</g>")
        out.append(
            f'<text x="{ox + panel_w / 2:g}" y="{margin + panel_h + 25}" text-anchor="middle" '
            f'font-size="12">{ax_names[0]} in [{_fmt(spec.x_range[0])}, {_fmt(spec.x_range[1])}]</text>'
        )
        out.append(
            f'<text x="{ox - 8}" y="{margin + panel_h / 2:g}" text-anchor="middle" font-size="12" '
            f'transform="rotate(-90 {ox - 8} {margin + panel_h / 2:g})">'
            f'{ax_names[1]} in [{_fmt(spec.y_range[0])}, {_fmt(spec.y_range[1])}]</text>'
        )
        out.append(
            f'<text x="{ox + panel_w / 2:g}" y="{margin - 10}" text-anchor="middle" font-size="12">'
            f'leaf ({leaf.outer_sign:+d},{leaf.z3_sign:+d}), max {_fmt(vmax)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(g, path, color_map="viridis"):
    _write_text(path, grid_to_svg(g, color_map))


# -- preset grids ------------------------------------------------------------

PRESET_PARAMS = TorusParams(r=1.0, R=2.0)
_REAL = ((-4.0, 4.0), (-4.0, 4.0))
_COMPLEX = ((-4.0, 4.0), (-3.0, 3.0))


def preset_specs(n=41):
    """Named grids over the standard charts, ``n x n`` nodes each.

    ``*_plus`` and ``*_minus`` are single leaves; ``*_overlay`` holds both.
    """
    def mk(chart, rng, outer, overlay=False):
        return GridSpec(chart, LeafIndex(outer, 1), rng[0], rng[1], n, n, PRESET_PARAMS, overlay)

    return {
        "real_plus": mk(Chart.LEAF_REAL_Z1Z2, _REAL, 1),
        "real_minus": mk(Chart.LEAF_REAL_Z1Z2, _REAL, -1),
        "complex_plus": mk(Chart.LEAF_COMPLEX_Z1, _COMPLEX, 1),
        "complex_minus": mk(Chart.LEAF_COMPLEX_Z1, _COMPLEX, -1),
        "complex_overlay": mk(Chart.LEAF_COMPLEX_Z1, _COMPLEX, 1, overlay=True),
        "real_overlay": mk(Chart.LEAF_REAL_Z1Z2, _REAL, 1, overlay=True),
    }
