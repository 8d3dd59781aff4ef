"""Marching-squares level-curve extraction from scalar fields.

Level curves of the kappa / kappa1 fields are the boundaries of the
condition pseudospectrum and pseudospectrum at the corresponding epsilon.
Crossing points are interpolated linearly along cell edges;
each interior point is computed once per edge, so polyline chaining joins
segments without any floating-point tolerance.  Saddle cells are
disambiguated by comparing the cell average against the level.  Cells with
a non-finite corner are skipped.
"""

from dataclasses import dataclass

import numpy as np

from .spectra import ScalarField


@dataclass(frozen=True)
class ContourSet:
    """Per level, a list of polylines of (re, im) points.

    Closed polylines repeat their first point at the end.
    """

    levels: tuple
    polylines: tuple


def _cell_segments(case: int, center_inside: bool):
    """Edge pairs crossed in a cell, as local edge ids b/r/t/l."""
    table = {
        1: [("l", "b")], 2: [("b", "r")], 3: [("l", "r")], 4: [("r", "t")],
        6: [("b", "t")], 7: [("l", "t")], 8: [("t", "l")], 9: [("t", "b")],
        11: [("t", "r")], 12: [("r", "l")], 13: [("r", "b")], 14: [("b", "l")],
    }
    if case in table:
        return table[case]
    if case == 5:  # bottom-left and top-right inside
        return [("l", "b"), ("r", "t")] if not center_inside else [("l", "t"), ("r", "b")]
    if case == 10:  # bottom-right and top-left inside
        return [("b", "r"), ("t", "l")] if not center_inside else [("b", "l"), ("t", "r")]
    return []


def _level_segments(re, im, values, level):
    """All crossing segments for one level, as pairs of edge keys."""
    ny, nx = values.shape
    inside = values >= level
    finite = np.isfinite(values)
    points = {}
    segments = []

    def crossing(kind, i, j):
        key = (kind, i, j)
        if key not in points:
            if kind == "h":
                va, vb = values[j, i], values[j, i + 1]
                t = (level - va) / (vb - va)
                points[key] = (re[i] + t * (re[i + 1] - re[i]), im[j])
            else:
                va, vb = values[j, i], values[j + 1, i]
                t = (level - va) / (vb - va)
                points[key] = (re[i], im[j] + t * (im[j + 1] - im[j]))
        return key

    for j in range(ny - 1):
        for i in range(nx - 1):
            if not (finite[j, i] and finite[j, i + 1] and finite[j + 1, i + 1] and finite[j + 1, i]):
                continue
            case = (int(inside[j, i]) | int(inside[j, i + 1]) << 1
                    | int(inside[j + 1, i + 1]) << 2 | int(inside[j + 1, i]) << 3)
            if case in (0, 15):
                continue
            avg = (values[j, i] + values[j, i + 1] + values[j + 1, i + 1] + values[j + 1, i]) / 4.0
            local = {
                "b": ("h", i, j), "t": ("h", i, j + 1),
                "l": ("v", i, j), "r": ("v", i + 1, j),
            }
            for ea, eb in _cell_segments(case, avg >= level):
                segments.append((crossing(*local[ea]), crossing(*local[eb])))
    return points, segments


def _chain(points, segments):
    """Join segments sharing edge keys into open/closed polylines."""
    neighbors = {}
    for a, b in segments:
        neighbors.setdefault(a, []).append(b)
        neighbors.setdefault(b, []).append(a)

    unused = {}
    for a, b in segments:
        unused.setdefault(a, []).append(b)
        unused.setdefault(b, []).append(a)

    def walk(start):
        path = [start]
        cur = start
        while unused.get(cur):
            nxt = unused[cur].pop()
            unused[nxt].remove(cur)
            path.append(nxt)
            cur = nxt
        return path

    polylines = []
    # open curves first: endpoints have odd degree
    for key in sorted(neighbors, key=lambda k: (k[0], k[1], k[2])):
        if len(neighbors[key]) % 2 == 1 and unused.get(key):
            polylines.append(walk(key))
    # remaining are closed loops
    for key in sorted(neighbors, key=lambda k: (k[0], k[1], k[2])):
        while unused.get(key):
            polylines.append(walk(key))
    return [tuple(points[k] for k in path) for path in polylines]


def extract_contours(field: ScalarField, levels) -> ContourSet:
    """Marching-squares contours of the field at each requested level."""
    levels = tuple(float(v) for v in levels)
    re, im, _ = field.grid.nodes()
    per_level = []
    for level in levels:
        points, segments = _level_segments(re, im, field.values, level)
        per_level.append(tuple(_chain(points, segments)))
    return ContourSet(levels, tuple(per_level))
