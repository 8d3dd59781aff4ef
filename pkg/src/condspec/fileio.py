"""File formats: matrix/vector input, scalar-field CSV, report JSON, SVG.

Matrices travel either as JSON ``{"rows": n, "cols": m, "entries":
[[re, im], ...]}`` with row-major entries, or as CSV whose tokens are
complex literals like ``0.25``, ``1+2j`` (``i`` is accepted for ``j``).
Vectors use the same formats with a single row or column.  Scalar fields
are emitted as ``re,im,value`` CSV with 17 significant digits so parsing
reproduces every double bit-exactly; infinities are written as ``inf``.

Report JSON mirrors the report dataclasses with snake_case keys; +inf is
encoded as the string "inf" and a not-applicable bound as null plus a
``<field>_reason`` sibling.
"""

import dataclasses
import json
import math
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, ParseError
from .spectra import GridSpec, Quantity, ScalarField


def _parse_complex_token(token: str, line: int, column: int) -> complex:
    text = token.strip().replace("i", "j").replace("I", "j")
    if not text:
        raise ParseError("empty entry", line, column)
    try:
        value = complex(text)
    except ValueError:
        raise ParseError(f"cannot parse {token.strip()!r} as a complex number",
                         line, column) from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ParseError(f"non-finite entry {token.strip()!r}", line, column)
    return value


def _matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object with rows/cols/entries")
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from None
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise ParseError("rows and cols must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise DimensionMismatch(
            f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
            f"got {len(entries) if isinstance(entries, list) else type(entries).__name__}"
        )
    out = np.empty((rows, cols), dtype=complex)
    for k, raw in enumerate(entries):
        if (not isinstance(raw, (list, tuple)) or len(raw) != 2
                or not all(isinstance(x, (int, float)) for x in raw)):
            raise ParseError(f"entry {k} must be a [re, im] pair, got {raw!r}")
        if not (math.isfinite(raw[0]) and math.isfinite(raw[1])):
            raise ParseError(f"entry {k} is not finite: {raw!r}")
        out[k // cols, k % cols] = complex(raw[0], raw[1])
    return out


def _matrix_from_csv(text: str) -> np.ndarray:
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        tokens = line.split(",")
        row = []
        col = 1
        for tok in tokens:
            row.append(_parse_complex_token(tok, lineno, col))
            col += len(tok) + 1
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise DimensionMismatch(
                f"non-rectangular CSV: line {lineno} has {len(row)} entries, expected {width}"
            )
        rows.append(row)
    if not rows:
        raise ParseError("no data rows found")
    return np.array(rows, dtype=complex)


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse matrix JSON or CSV from a string."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return _matrix_from_json(obj)
    return _matrix_from_csv(text)


def parse_matrix_file(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix_text(fh.read())


def parse_vector_text(text: str) -> np.ndarray:
    """Parse a vector: a matrix with one row or one column."""
    m = parse_matrix_text(text)
    if m.shape[0] == 1:
        return m[0, :].copy()
    if m.shape[1] == 1:
        return m[:, 0].copy()
    raise DimensionMismatch(f"expected a single row or column, got shape {m.shape}")


def parse_vector_file(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_vector_text(fh.read())


def matrix_to_json_dict(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(v.real), float(v.imag)] for v in m.ravel()],
    }


def vector_to_json_dict(v: np.ndarray) -> dict:
    v = np.asarray(v, dtype=complex)
    return matrix_to_json_dict(v[:, np.newaxis])


def _format_value(v: float) -> str:
    if math.isinf(v):
        return "inf"
    return f"{v:.17g}"


def emit_field_csv(field: ScalarField, sink) -> None:
    """Write ``re,im,value`` rows, imaginary part as the outer loop."""
    re, im, _ = field.grid.nodes()
    sink.write("re,im,value\n")
    for j in range(field.grid.ny):
        for i in range(field.grid.nx):
            sink.write(f"{re[i]:.17g},{im[j]:.17g},{_format_value(field.values[j, i])}\n")


def parse_field_csv(text: str):
    """Parse emitted field CSV back into (re, im, values) arrays."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "re,im,value":
        raise ParseError("expected header 're,im,value'", 1, 1)
    res, ims, vals = [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 3:
            raise ParseError(f"expected 3 fields, got {len(parts)}", lineno, 1)
        try:
            res.append(float(parts[0]))
            ims.append(float(parts[1]))
            vals.append(math.inf if parts[2].strip() == "inf" else float(parts[2]))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, 1) from None
    re = np.unique(np.array(res))
    im = np.unique(np.array(ims))
    if re.size * im.size != len(vals):
        raise DimensionMismatch(
            f"{len(vals)} rows do not form a {im.size}x{re.size} grid"
        )
    values = np.array(vals).reshape(im.size, re.size)
    return re, im, values


def _jsonify(value):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, str)) or value is None:
        return value
    if isinstance(value, float):
        return "inf" if math.isinf(value) else value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.ndarray):
        if value.ndim == 1:
            return [[float(v.real), float(v.imag)] for v in value.astype(complex)]
        return matrix_to_json_dict(value)
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if dataclasses.is_dataclass(value):
        return report_to_dict(value)
    if isinstance(value, (np.floating, np.integer)):
        return _jsonify(value.item())
    raise TypeError(f"cannot serialize {type(value).__name__}")


def report_to_dict(report) -> dict:
    """Serialize a report dataclass; None fields gain a reason sibling."""
    out = {}
    reasons = getattr(report, "na_reasons", {})
    for f in dataclasses.fields(report):
        if f.name == "na_reasons":
            continue
        out[f.name] = _jsonify(getattr(report, f.name))
    for name, reason in reasons.items():
        out[f"{name}_reason"] = reason
    return out


def field_to_dict(field: ScalarField) -> dict:
    return {
        "grid": report_to_dict(field.grid),
        "quantity": field.quantity.value,
        "values": [[_jsonify(float(v)) for v in row] for row in field.values],
    }


def contours_to_dict(contours) -> dict:
    return {
        "levels": list(contours.levels),
        "polylines": [
            [[[float(x), float(y)] for x, y in line] for line in level]
            for level in contours.polylines
        ],
    }


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def contours_to_svg(contours, grid: GridSpec, width: int = 640) -> str:
    """Decorative SVG rendering; CSV/JSON are the contractual outputs."""
    span_x = grid.re_max - grid.re_min
    span_y = grid.im_max - grid.im_min
    height = max(1, round(width * span_y / span_x))

    def px(x, y):
        return ((x - grid.re_min) / span_x * width,
                (grid.im_max - y) / span_y * height)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for li, level in enumerate(contours.levels):
        color = _SVG_COLORS[li % len(_SVG_COLORS)]
        for line in contours.polylines[li]:
            coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in (px(*pt) for pt in line))
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.2"><title>level {level:g}</title></polyline>'
            )
    parts.append("</svg>")
    return "\n".join(parts)
