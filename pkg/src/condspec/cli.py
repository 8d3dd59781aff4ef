"""Command-line interface.

Exit codes: 0 on success, 1 when a validation fails (a reference cell
mismatch in reproduce-paper or a lemma-certificate violation), 2 on usage
or input errors.  Results go to stdout, diagnostics to stderr.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import reproduce
from .contours import extract_contours
from .distances import SearchConfig, distance_to_instability, distance_to_singularity
from .errors import CondspecError
from .fileio import (
    contours_to_dict,
    contours_to_svg,
    emit_field_csv,
    field_to_dict,
    matrix_to_json_dict,
    parse_matrix_file,
    parse_vector_file,
    report_to_dict,
    vector_to_json_dict,
)
from .fixtures import FIXTURE_NAMES, load_fixture
from .linalg import NormKind, operator_norm
from .perturbation import perturb_joint, perturb_operator, perturb_rhs
from .spectra import (
    GridSpec,
    Lemma,
    Quantity,
    check_inclusion,
    condspec_radius_bound,
    grid_eval,
    kappa_fields,
    sample,
)

_NORMS = {"2": NormKind.SPECTRAL, "1": NormKind.ONE, "inf": NormKind.INFINITY}


@dataclass(frozen=True)
class RunConfig:
    """Bundled options for the grid/contour subcommands."""

    norm: NormKind = NormKind.SPECTRAL
    grid: GridSpec | None = None
    levels: tuple = ()
    output_format: str = "csv"
    seed: int = 0
    tol: float = 1e-6

    def __post_init__(self):
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        object.__setattr__(self, "levels", tuple(sorted(self.levels)))


def _parse_z(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(",")
    if len(parts) != 6:
        raise argparse.ArgumentTypeError(
            f"expected RE_MIN,RE_MAX,IM_MIN,IM_MAX,NX,NY, got {text!r}"
        )
    try:
        return GridSpec(float(parts[0]), float(parts[1]), float(parts[2]),
                        float(parts[3]), int(parts[4]), int(parts[5]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_levels(text: str) -> tuple:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated levels, got {text!r}")


def _default_grid(matrix, levels, kind, pseudo: bool) -> GridSpec:
    # Window sized from the containment radius of the largest level,
    # padded 10%, so the plotted sets always fit.
    if pseudo:
        radius = operator_norm(matrix, kind) + max(levels)
    else:
        radius = condspec_radius_bound(matrix, max(levels), kind)
    radius *= 1.1
    return GridSpec(-radius, radius, -radius, radius, 201, 201)


def _write_output(text: str, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text, encoding="utf-8")


def _cmd_grid(args, pseudo: bool) -> int:
    matrix = parse_matrix_file(args.matrix)
    kind = _NORMS[args.norm]
    levels = args.levels or ((0.2, 0.3, 0.4, 0.5) if pseudo else (0.1, 0.15, 0.2, 0.25))
    config = RunConfig(norm=kind, grid=args.grid, levels=levels,
                       output_format=args.format)
    grid = config.grid or _default_grid(matrix, config.levels, kind, pseudo)
    quantity = Quantity.KAPPA1 if pseudo else Quantity.KAPPA
    field = grid_eval(matrix, grid, quantity, kind)
    contours = extract_contours(field, config.levels)
    if config.output_format == "csv":
        import io

        buf = io.StringIO()
        emit_field_csv(field, buf)
        _write_output(buf.getvalue(), args.out)
    elif config.output_format == "json":
        payload = {"field": field_to_dict(field), "contours": contours_to_dict(contours)}
        _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _write_output(contours_to_svg(contours, grid) + "\n", args.out)
    return 0


def _cmd_pseudospectrum(args) -> int:
    return _cmd_grid(args, pseudo=True)


def _cmd_condspectrum(args) -> int:
    return _cmd_grid(args, pseudo=False)


def _cmd_kappa(args) -> int:
    matrix = parse_matrix_file(args.matrix)
    s = sample(matrix, args.z, _NORMS[args.norm])
    print(f"kappa = {s.kappa:.8f}")
    print(f"kappa1 = {s.kappa1:.8f}")
    return 0


def _cmd_perturb_rhs(args) -> int:
    report = perturb_rhs(parse_matrix_file(args.matrix), args.z,
                         parse_vector_file(args.y), parse_vector_file(args.dy),
                         _NORMS[args.norm])
    print(json.dumps(report_to_dict(report), indent=2))
    return 0


def _cmd_perturb_op(args) -> int:
    report = perturb_operator(parse_matrix_file(args.matrix), args.z,
                              parse_vector_file(args.y), parse_matrix_file(args.da),
                              _NORMS[args.norm])
    print(json.dumps(report_to_dict(report), indent=2))
    return 0


def _cmd_perturb_joint(args) -> int:
    report = perturb_joint(parse_matrix_file(args.matrix), args.z,
                           parse_vector_file(args.y), parse_matrix_file(args.da),
                           parse_vector_file(args.dy), _NORMS[args.norm])
    print(json.dumps(report_to_dict(report), indent=2))
    return 0


def _cmd_dist_instability(args) -> int:
    search = SearchConfig(scan_points=args.scan_points, tol=args.tol)
    report = distance_to_instability(parse_matrix_file(args.matrix),
                                     _NORMS[args.norm], search)
    print(json.dumps(report_to_dict(report), indent=2))
    return 0


def _cmd_dist_singularity(args) -> int:
    report = distance_to_singularity(parse_matrix_file(args.matrix), _NORMS[args.norm])
    print(json.dumps(report_to_dict(report), indent=2))
    return 0


def _cmd_check_lemmas(args) -> int:
    matrix = parse_matrix_file(args.matrix)
    kind = _NORMS[args.norm]
    lemmas = list(Lemma) if args.lemma == "all" else [Lemma(args.lemma)]
    grid = args.grid
    if grid is None:
        radius = 1.1 * (operator_norm(matrix, kind) + max(args.epsilon))
        grid = GridSpec(-radius, radius, -radius, radius, 101, 101)
    fields = kappa_fields(matrix, grid, kind)
    certificates = []
    for lemma in lemmas:
        for eps in args.epsilon:
            certificates.append(check_inclusion(matrix, lemma, eps, grid, kind, fields))
    print(json.dumps([report_to_dict(c) for c in certificates], indent=2))
    if any(not c.passed for c in certificates):
        print("lemma check failed", file=sys.stderr)
        return 1
    return 0


def _fmt_value(value: complex) -> str:
    if value.imag == 0.0:
        return f"{value.real:.12g}"
    return f"{value.real:.12g}{value.imag:+.12g}i"


def _dump_fixtures(directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    def write(name, payload):
        (directory / name).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")

    for name in FIXTURE_NAMES:
        fx = load_fixture(name)
        write(f"{name}_A.json", matrix_to_json_dict(fx.a))
        if fx.b is not None:
            write(f"{name}_B.json", matrix_to_json_dict(fx.b))
        write(f"{name}_y.json", vector_to_json_dict(fx.y))
        if fx.delta_ys is not None:
            for i, dy in enumerate(fx.delta_ys):
                write(f"{name}_dy{i}.json", vector_to_json_dict(np.asarray(dy)))
        if fx.delta_as is not None:
            for i, da in enumerate(fx.delta_as):
                write(f"{name}_dA{i}.json", matrix_to_json_dict(np.asarray(da)))


def _cmd_reproduce(args) -> int:
    if args.dump_fixtures:
        _dump_fixtures(args.dump_fixtures)
        print(f"fixtures written to {args.dump_fixtures}", file=sys.stderr)
    ids = reproduce.TABLE_IDS if args.table == "all" else (int(args.table),)
    total = passed = 0
    any_fail = False
    for table_id in ids:
        tc = reproduce.check_table(table_id)
        print(f"table {tc.table_id}: {tc.fixture} -- {tc.title}")
        print(f"  {'row':<16} {'column':<14} {'computed':<22} {'published':<18} "
              f"{'abs error':<11} status")
        for cell in tc.cells:
            status = "PASS" if cell.passed else "FAIL"
            note = f"  ({cell.note})" if cell.note else ""
            err = cell.error
            err_text = "inf" if math.isinf(err) else f"{err:.3e}"
            print(f"  {cell.row:<16} {cell.column:<14} {_fmt_value(cell.computed):<22} "
                  f"{cell.expected.text if hasattr(cell.expected, 'text') else cell.expected.re_text + '+' + cell.expected.im_text + 'i':<18} "
                  f"{err_text:<11} {status}{note}")
        total += len(tc.cells)
        passed += sum(1 for c in tc.cells if c.passed)
        any_fail = any_fail or not tc.passed
        print(f"  -> {'PASS' if tc.passed else 'FAIL'} "
              f"({sum(1 for c in tc.cells if c.passed)}/{len(tc.cells)} cells)")
        print()
    print(f"reproduce-paper: {'PASS' if not any_fail else 'FAIL'} ({passed}/{total} cells)")
    return 0 if not any_fail else 1


def _add_common(p, matrix=True):
    if matrix:
        p.add_argument("matrix", help="matrix file (JSON or CSV)")
    p.add_argument("--norm", choices=sorted(_NORMS), default="2",
                   help="operator norm: 2 (spectral), 1, or inf (default: 2)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="condspec",
        description="Pseudospectra, condition pseudospectra and certified "
                    "perturbation bounds for dense complex matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, pseudo in (("pseudospectrum", True), ("condspectrum", False)):
        p = sub.add_parser(name, help=f"{name} grid and contours")
        _add_common(p)
        p.add_argument("--grid", type=_parse_grid, default=None,
                       help="RE_MIN,RE_MAX,IM_MIN,IM_MAX,NX,NY (default: auto window)")
        p.add_argument("--levels", type=_parse_levels, default=None,
                       help="comma-separated epsilon levels")
        p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.set_defaults(func=_cmd_pseudospectrum if pseudo else _cmd_condspectrum)

    p = sub.add_parser("kappa", help="print kappa and kappa1 at a point")
    _add_common(p)
    p.add_argument("--z", type=_parse_z, required=True, help="shift as RE,IM")
    p.set_defaults(func=_cmd_kappa)

    p = sub.add_parser("perturb-rhs", help="right-hand-side perturbation report")
    _add_common(p)
    p.add_argument("--z", type=_parse_z, required=True)
    p.add_argument("--y", required=True, help="right-hand-side vector file")
    p.add_argument("--dy", required=True, help="perturbation vector file")
    p.set_defaults(func=_cmd_perturb_rhs)

    p = sub.add_parser("perturb-op", help="operator perturbation report")
    _add_common(p)
    p.add_argument("--z", type=_parse_z, required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--da", required=True, help="operator perturbation matrix file")
    p.set_defaults(func=_cmd_perturb_op)

    p = sub.add_parser("perturb-joint", help="joint operator + rhs perturbation report")
    _add_common(p)
    p.add_argument("--z", type=_parse_z, required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--da", required=True)
    p.add_argument("--dy", required=True)
    p.set_defaults(func=_cmd_perturb_joint)

    p = sub.add_parser("dist-instability", help="distance to instability with bounds")
    _add_common(p)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--scan-points", type=int, default=2001)
    p.set_defaults(func=_cmd_dist_instability)

    p = sub.add_parser("dist-singularity", help="distance to singularity")
    _add_common(p)
    p.set_defaults(func=_cmd_dist_singularity)

    p = sub.add_parser("check-lemmas", help="set-inclusion certificates on a grid")
    _add_common(p)
    p.add_argument("--epsilon", type=float, nargs="+", required=True)
    p.add_argument("--lemma", choices=("all", "lem1", "lem2", "lem3"), default="all")
    p.add_argument("--grid", type=_parse_grid, default=None)
    p.set_defaults(func=_cmd_check_lemmas)

    p = sub.add_parser("reproduce-paper",
                       help="recompute the built-in reference tables and compare")
    p.add_argument("--table", default="all",
                   help="table id 1-7 or 'all' (default: all)")
    p.add_argument("--dump-fixtures", default=None, metavar="DIR",
                   help="also write fixture matrices/vectors as JSON files")
    p.set_defaults(func=_cmd_reproduce)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CondspecError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
