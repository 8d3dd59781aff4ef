"""Recompute every built-in reference table and compare cell by cell."""

import itertools
from dataclasses import dataclass

from .fixtures import load_fixture
from .linalg import NormKind, eigenvalues
from .perturbation import perturb_joint, perturb_operator, perturb_rhs
from .spectra import sample


@dataclass(frozen=True)
class CellCheck:
    row: str
    column: str
    computed: complex
    expected: object  # Published or PublishedComplex
    passed: bool

    @property
    def error(self) -> float:
        return self.expected.error(self.computed)

    @property
    def note(self):
        return self.expected.note


@dataclass(frozen=True)
class TableCheck:
    table_id: int
    fixture: str
    title: str
    cells: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    @property
    def failures(self) -> tuple:
        return tuple(c for c in self.cells if not c.passed)


def _cell(row, column, computed, expected):
    # A not-applicable bound compares as +inf so the mismatch is visible.
    value = complex(float("inf")) if computed is None else complex(computed)
    return CellCheck(row, column, value, expected, expected.matches(value))


def _zlabel(z: complex) -> str:
    if z.imag == 0.0:
        return f"z={z.real:g}"
    return f"z={z.real:g}{z.imag:+g}i"


def _vector_cells(row, name, computed, published):
    return [
        _cell(row, f"{name}[{j}]", computed[j], published[j])
        for j in range(len(published))
    ]


def _check_ex2_1() -> TableCheck:
    fx = load_fixture("ex2_1")
    z = fx.z_values[0]
    cells = []
    for dy, row in zip(fx.delta_ys, fx.expected["rows"]):
        label = f"dy=({dy[0].real:g},{dy[1].real:g})"
        rep_a = perturb_rhs(fx.a, z, fx.y, dy)
        rep_b = perturb_rhs(fx.b, z, fx.y, dy)
        cells += _vector_cells(label, "dx1", rep_a.dx, row["dx1"])
        cells.append(_cell(label, "ratio1", rep_a.rel_observed, row["ratio1"]))
        cells += _vector_cells(label, "dx2", rep_b.dx, row["dx2"])
        cells.append(_cell(label, "ratio2", rep_b.rel_observed, row["ratio2"]))
    return TableCheck(1, "ex2_1", "2x2 diagonal system, right-hand-side perturbations", tuple(cells))


def _check_ex2_2() -> TableCheck:
    fx = load_fixture("ex2_2")
    z = fx.z_values[0]
    cells = []
    for da, row in zip(fx.delta_as, fx.expected["rows"]):
        label = f"eps={da[0, 0].real:g}"
        rep_a = perturb_operator(fx.a, z, fx.y, da)
        rep_b = perturb_operator(fx.b, z, fx.y, da)
        cells += _vector_cells(label, "dx1", rep_a.dx, row["dx1"])
        cells.append(_cell(label, "ratio1", rep_a.ratio_x, row["ratio1"]))
        cells += _vector_cells(label, "dx2", rep_b.dx, row["dx2"])
        cells.append(_cell(label, "ratio2", rep_b.ratio_x, row["ratio2"]))
    return TableCheck(2, "ex2_2", "3x3 triangular system, operator perturbations", tuple(cells))


def _check_ex2_3() -> TableCheck:
    fx = load_fixture("ex2_3")
    z = fx.z_values[0]
    cells = []
    for da, dy, row in zip(fx.delta_as, fx.delta_ys, fx.expected["rows"]):
        label = f"eps={dy[0].real:g}"
        rep_a = perturb_joint(fx.a, z, fx.y, da, dy)
        rep_b = perturb_joint(fx.b, z, fx.y, da, dy)
        cells += _vector_cells(label, "dx1", rep_a.dx, row["dx1"])
        cells += _vector_cells(label, "dx2", rep_b.dx, row["dx2"])
    return TableCheck(3, "ex2_3", "3x3 triangular system, joint perturbations", tuple(cells))


def _check_ex3_1() -> TableCheck:
    fx = load_fixture("ex3_1_rhs")
    dy = fx.delta_ys[0]
    cells = []
    for z, row in zip(fx.z_values, fx.expected["rows"]):
        label = _zlabel(z)
        rep = perturb_rhs(fx.a, z, fx.y, dy)
        kap = sample(fx.a, z).kappa
        cells.append(_cell(label, "ratio", rep.rel_observed, row["ratio"]))
        cells.append(_cell(label, "kappa", kap, row["kappa"]))
        cells.append(_cell(label, "lower", rep.lower, row["lower"]))
        upper = rep.upper if rep.upper is not None else float("inf")
        cells.append(_cell(label, "upper", upper, row["upper"]))
    return TableCheck(4, "ex3_1_rhs", "10x10 two-diagonal system, kappa sandwich bounds", tuple(cells))


def _paired(computed, published):
    """Order ``computed`` to minimize the worst distance to ``published``."""
    best, best_perm = float("inf"), None
    for perm in itertools.permutations(range(len(computed))):
        worst = max(abs(computed[p] - published[j].value) for j, p in enumerate(perm))
        if worst < best:
            best, best_perm = worst, perm
    return [computed[p] for p in best_perm]


def _spectrum_cells(label, matrix, published):
    res = eigenvalues(matrix)
    ordered = _paired(list(res.eigenvalues), published)
    return [
        _cell(label, f"eig[{j}]", ordered[j], published[j])
        for j in range(len(published))
    ]


def _check_ex3_2(table_id: int) -> TableCheck:
    fx = load_fixture("ex3_2_op")
    da = fx.delta_as[0]
    cells = []
    if table_id == 5:
        cells += _spectrum_cells("spectrum(A)", fx.a, fx.expected["spectrum_a"])
        cells += _spectrum_cells("spectrum(A+dA)", fx.a + da, fx.expected["spectrum_perturbed"])
        rows, ratio_attr = fx.expected["rows_xpdx"], "xpdx"
        title = "4x4 system, operator perturbation bounds on |dx|/|x+dx|"
    else:
        rows, ratio_attr = fx.expected["rows_x"], "x"
        title = "4x4 system, operator perturbation bounds on |dx|/|x|"
    for z, row in zip(fx.z_values, rows):
        label = _zlabel(z)
        rep = perturb_operator(fx.a, z, fx.y, da)
        if ratio_attr == "xpdx":
            ratio, bp, bc = rep.ratio_xpdx, rep.bound_pseudo_xpdx, rep.bound_cond_xpdx
        else:
            ratio, bp, bc = rep.ratio_x, rep.bound_pseudo_x, rep.bound_cond_x
        cells.append(_cell(label, "ratio", ratio, row["ratio"]))
        cells.append(_cell(label, "bound_pseudo", bp, row["bound_pseudo"]))
        cells.append(_cell(label, "bound_cond", bc, row["bound_cond"]))
    return TableCheck(table_id, "ex3_2_op", title, tuple(cells))


def _check_ex3_3() -> TableCheck:
    fx = load_fixture("ex3_3_joint")
    da, dy = fx.delta_as[0], fx.delta_ys[0]
    cells = []
    for z, row in zip(fx.z_values, fx.expected["rows"]):
        label = _zlabel(z)
        rep = perturb_joint(fx.a, z, fx.y, da, dy)
        cells.append(_cell(label, "ratio", rep.rel_observed, row["ratio"]))
        cells.append(_cell(label, "bound", rep.bound, row["bound"]))
    return TableCheck(7, "ex3_3_joint", "6x6 symmetric system, joint perturbation bound", tuple(cells))


TABLE_IDS = (1, 2, 3, 4, 5, 6, 7)


def check_table(table_id: int) -> TableCheck:
    """Recompute one reference table; see TABLE_IDS for valid ids."""
    if table_id == 1:
        return _check_ex2_1()
    if table_id == 2:
        return _check_ex2_2()
    if table_id == 3:
        return _check_ex2_3()
    if table_id == 4:
        return _check_ex3_1()
    if table_id in (5, 6):
        return _check_ex3_2(table_id)
    if table_id == 7:
        return _check_ex3_3()
    raise ValueError(f"unknown table id {table_id}; valid ids: {TABLE_IDS}")


def check_all() -> list:
    return [check_table(i) for i in TABLE_IDS]
