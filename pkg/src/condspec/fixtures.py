"""Built-in example systems and their published reference values.

Each fixture bundles the matrices, vectors, shifts and perturbations of one
worked example together with the reference table it is expected to
reproduce.  Reference cells keep the exact decimal text as published, so a
comparison can honor both the acceptance tolerance and the precision the
value was printed with (several tables truncate rather than round).
"""

from dataclasses import dataclass

import numpy as np

from .errors import UnknownFixture


@dataclass(frozen=True)
class Published:
    """One published real value: exact decimal text plus comparison rule.

    A computed value matches when its error is within
    max(abs_tol, one ulp of the printed text) or, if ``rel_tol`` is set,
    within rel_tol relative to the published value.  ``note`` marks cells
    with known publication defects.
    """

    text: str
    abs_tol: float
    rel_tol: float | None = None
    note: str | None = None

    @property
    def value(self) -> float:
        return float(self.text)

    @property
    def print_ulp(self) -> float:
        t = self.text.lower().lstrip("+-")
        exp = 0
        if "e" in t:
            t, etext = t.split("e")
            exp = int(etext)
        if "." not in t:
            return 0.0
        return 10.0 ** (exp - len(t.split(".")[1]))

    def error(self, computed) -> float:
        return abs(complex(computed) - self.value)

    def matches(self, computed) -> bool:
        err = self.error(computed)
        if err <= max(self.abs_tol, self.print_ulp):
            return True
        return self.rel_tol is not None and err <= self.rel_tol * abs(self.value)


@dataclass(frozen=True)
class PublishedComplex:
    """One published complex value (eigenvalue table entries)."""

    re_text: str
    im_text: str
    abs_tol: float
    note: str | None = None

    @property
    def value(self) -> complex:
        return complex(float(self.re_text), float(self.im_text))

    def error(self, computed) -> float:
        return abs(complex(computed) - self.value)

    def matches(self, computed) -> bool:
        return self.error(computed) <= self.abs_tol


@dataclass(frozen=True)
class Fixture:
    """One embedded example: inputs plus its published expectations.

    ``delta_ys`` / ``delta_as`` hold one entry per table row when the
    perturbation varies by row, or a single shared entry.  The layout of
    ``expected`` is fixture-specific and consumed by ``condspec.reproduce``.
    """

    name: str
    a: np.ndarray
    b: np.ndarray | None
    y: np.ndarray
    z_values: tuple
    delta_ys: tuple | None
    delta_as: tuple | None
    expected: dict
    notes: tuple = ()


FIXTURE_NAMES = ("ex2_1", "ex2_2", "ex2_3", "ex3_1_rhs", "ex3_2_op", "ex3_3_joint")

_E6 = 1e-6
_E5 = 1e-5
_E9 = 1e-9


def _vec_cells(texts, tol):
    return tuple(Published(t, tol) for t in texts)


def _ex2_1() -> Fixture:
    a = np.array([[1.1, 0.0], [0.0, 2.0]], dtype=complex)
    b = np.array([[1.1, 10.0], [0.0, 2.0]], dtype=complex)
    y = np.array([1.0, 1.0], dtype=complex)
    delta_ys = (
        (0.01, 0.01), (0.01, 0.02), (0.02, 0.01), (0.02, 0.02),
        (0.03, -0.03), (0.04, -0.04), (0.05, -0.05), (0.06, -0.06),
    )
    table = (
        (("0.1", "0.01"), "0.01", ("-0.9", "0.01"), "0.01"),
        (("0.1", "0.02"), "0.0101474", ("-1.9", "0.02"), "0.0211109"),
        (("0.2", "0.01"), "0.0199256", ("-0.8", "0.01"), "0.008889"),
        (("0.2", "0.02"), "0.02", ("-1.8", "0.02"), "0.02"),
        (("0.3", "-0.03"), "0.03", ("3.3", "-0.03"), "0.0366659"),
        (("0.4", "-0.04"), "0.04", ("4.4", "-0.04"), "0.0488879"),
        (("0.5", "-0.05"), "0.05", ("5.5", "-0.05"), "0.0611098"),
        (("0.6", "-0.06"), "0.06", ("6.6", "-0.06"), "0.0733318"),
    )
    rows = tuple(
        {
            "dx1": _vec_cells(dx1, _E9),
            "ratio1": Published(r1, _E6),
            "dx2": _vec_cells(dx2, _E9),
            "ratio2": Published(r2, _E6),
        }
        for dx1, r1, dx2, r2 in table
    )
    return Fixture(
        "ex2_1", a, b, y, (1.0 + 0.0j,),
        tuple(np.array(dy, dtype=complex) for dy in delta_ys), None,
        {"rows": rows},
    )


def _ex2_2() -> Fixture:
    a = np.array([[1.0, 0.0, -1.0], [0.0, 2.1, 1.0], [0.0, 0.0, 3.0]], dtype=complex)
    b = np.array([[1.0, 10.0, 10.0], [0.0, 2.1, 10.0], [0.0, 0.0, 3.0]], dtype=complex)
    y = np.ones(3, dtype=complex)
    eps_rows = (0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07)
    table = (
        (("-0.02020202", "0", "0"), "0.0090346", ("73.64463", "8.18182", "0"), "0.0827413"),
        (("-0.04081633", "0", "0"), "0.0182536", ("134.87755", "15", "0"), "0.1515397"),
        (("-0.06185567", "0", "0"), "0.0276626", ("186.55908", "20.76923", "0"), "0.2096085"),
        (("-0.08333333", "0", "0"), "0.0372677", ("230.73214", "25.71428", "0"), "0.2592425"),
        (("-0.10526316", "0", "0"), "0.0470751", ("268.89473", "30", "0"), "0.302125"),
        (("-0.12765957", "0", "0"), "0.0570910", ("302.170212", "33.75", "0"), "0.339517"),
        (("-0.15053763", "0", "0"), "0.0673224", ("331.41745", "37.05882", "0"), "0.3723843"),
    )
    rows = tuple(
        {
            "dx1": _vec_cells(dx1, _E5),
            "ratio1": Published(r1, _E5),
            "dx2": _vec_cells(dx2, _E5),
            "ratio2": Published(r2, _E5),
        }
        for dx1, r1, dx2, r2 in table
    )
    return Fixture(
        "ex2_2", a, b, y, (2.0 + 0.0j,), None,
        tuple(np.diag([e, e, 0.0]).astype(complex) for e in eps_rows),
        {"rows": rows},
    )


def _ex2_3() -> Fixture:
    a = np.array([[1.0, 0.0, -1.0], [0.0, 2.0, 1.0], [0.0, 0.0, 3.1]], dtype=complex)
    b = np.array([[1.0, 10.0, 10.0], [0.0, 2.0, 10.0], [0.0, 0.0, 3.1]], dtype=complex)
    y = np.ones(3, dtype=complex)
    eps_rows = (0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07)
    table = (
        (("0.404", "-0.745", "-0.818"), ("-40.468", "-7.274", "-0.818")),
        (("0.74", "-1.367", "-1.5"), ("-74.040", "-13.306", "-1.5")),
        (("1.023", "-1.893", "-2.076"), ("-102.302", "-18.380", "-2.076")),
        (("1.265", "-2.345", "-2.571"), ("-126.389", "-22.702", "-2.571")),
        (("1.475", "-2.736", "-3"), ("-147.130", "-26.421", "-3")),
        (("1.657", "-3.079", "-3.375"), ("-165.149", "-29.648", "-3.375")),
        (("1.817", "-3.382", "-3.705"), ("-180.923", "-32.471", "-3.705")),
    )
    rows = tuple(
        {"dx1": _vec_cells(dx1, _E5), "dx2": _vec_cells(dx2, _E5)}
        for dx1, dx2 in table
    )
    return Fixture(
        "ex2_3", a, b, y, (3.0 + 0.0j,),
        tuple(np.array([e, e, e], dtype=complex) for e in eps_rows),
        tuple(np.diag([0.0, e, e]).astype(complex) for e in eps_rows),
        {"rows": rows},
    )


_EX3_1_DUP_NOTE = (
    "published cell duplicates the z=1-i row; recomputation under every "
    "supported norm gives kappa(3-i) = 0.46662049"
)


def _ex3_1() -> Fixture:
    n = 10
    a = np.zeros((n, n), dtype=complex)
    for i in range(n - 1):
        a[i, i + 1] = 1.0
        a[i + 1, i] = 0.25
    y = np.ones(n, dtype=complex)
    dy = np.zeros(n, dtype=complex)
    dy[0] = 0.1
    z_values = (2.0 + 0.0j, 2.0 + 1.0j, 3.0 - 1.0j, 1.0 - 1.0j, 2.0 - 1.0j, 3.0 + 3.0j, 4.0j)
    table = (
        ("0.01451478", "0.25562528", "0.00808358", "0.12370754", None),
        ("0.01916041", "0.34480349", "0.01090364", "0.09171245", None),
        ("0.02157139", "0.22394260", "0.00708168", "0.14120929", _EX3_1_DUP_NOTE),
        ("0.02192375", "0.22394260", "0.00708168", "0.14120929", None),
        ("0.01916041", "0.34480349", "0.01090364", "0.09171245", None),
        ("0.02634769", "0.62518073", "0.01976995", "0.05058181", None),
        ("0.03238426", "0.69642891", "0.02202301", "0.04540704", None),
    )
    rows = tuple(
        {
            "ratio": Published(ratio, _E6),
            "kappa": Published(kap, _E6, note=note),
            "lower": Published(lower, _E6, note=note),
            "upper": Published(upper, _E6, note=note),
        }
        for ratio, kap, lower, upper, note in table
    )
    return Fixture(
        "ex3_1_rhs", a, None, y, z_values, (dy,), None, {"rows": rows},
        notes=("the kappa-derived cells of the z=3-i row carry a publication defect",),
    )


_EX3_2_ENOTE = "published as -2.40617352 x e^-5; read as -2.40617352e-5"


def _ex3_2() -> Fixture:
    a = np.array(
        [[1.0, -6.0, 7.0, -9.0],
         [1.0, -5.0, 0.0, 0.0],
         [0.0, 1.0, -5.0, 0.0],
         [0.0, 0.0, 1.0, -5.0]], dtype=complex)
    y = np.ones(4, dtype=complex)
    da = np.diag([-0.01, -0.01, 0.0, 0.0]).astype(complex)
    z_values = (0.0 + 0.0j, 0.001 + 0.001j, 0.1 + 0.0j, -3.5 + 0.0j,
                -5.0 + 1.0j, 1.0 + 1.0j, 10.0 + 10.0j)
    spectrum_a = (
        PublishedComplex("0.00964896", "0", _E6),
        PublishedComplex("-3.72221248", "0", _E6),
        PublishedComplex("-5.14371824", "1.17699479", _E6),
        PublishedComplex("-5.14371824", "-1.17699479", _E6),
    )
    spectrum_perturbed = (
        PublishedComplex("-2.40617352e-5", "0", _E6, note=_EX3_2_ENOTE),
        PublishedComplex("-3.726616", "0", _E6),
        PublishedComplex("-5.14667997", "1.17985088", _E6),
        PublishedComplex("-5.14667997", "-1.17985088", _E6),
    )

    def cell(text):
        v = abs(float(text))
        return Published(text, _E6) if v < 10.0 else Published(text, 0.0, rel_tol=1e-4)

    table_xpdx = (
        ("1.00250311", "3.20374633", "6.28729589"),
        ("1.11144480", "3.54979202", "6.96656727"),
        ("0.11116547", "0.33536750", "0.65971972"),
        ("0.01890969", "0.10268623", "0.19736876"),
        ("0.02005952", "0.06879138", "0.13682253"),
        ("0.00711180", "0.01821627", "0.03689838"),
        ("0.00039271", "0.00096510", "0.00324741"),
    )
    table_x = (
        ("400.49840503", "1283.50359817", "2519.32007747"),
        ("6.73531833", "21.57230484", "42.34410702"),
        ("0.10005389", "0.30265747", "0.59548750"),
        ("0.01856115", "0.10081974", "0.19377512"),
        ("0.01989405", "0.06762120", "0.13448096"),
        ("0.00707485", "0.01811715", "0.03670612"),
        ("0.00039262", "0.00096463", "0.00324679"),
    )
    rows_xpdx = tuple(
        {"ratio": cell(r), "bound_pseudo": cell(bp), "bound_cond": cell(bc)}
        for r, bp, bc in table_xpdx
    )
    rows_x = tuple(
        {"ratio": cell(r), "bound_pseudo": cell(bp), "bound_cond": cell(bc)}
        for r, bp, bc in table_x
    )
    return Fixture(
        "ex3_2_op", a, None, y, z_values, None, (da,),
        {
            "spectrum_a": spectrum_a,
            "spectrum_perturbed": spectrum_perturbed,
            "rows_xpdx": rows_xpdx,
            "rows_x": rows_x,
        },
    )


def _ex3_3() -> Fixture:
    a = np.array([[abs(i - j) for j in range(6)] for i in range(6)], dtype=float).astype(complex)
    y = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0], dtype=complex)
    da = np.diag([-0.01, -0.01, 0.0, 0.0, 0.0, 0.0]).astype(complex)
    dy = np.array([0.01, 0.02, 0.03, 0.04, 0.0, 0.0], dtype=complex)
    z_values = (0.0 + 0.0j, 0.2 + 0.0j, 0.4 + 0.0j, 0.6 + 0.0j,
                -0.1 + 0.0j, -0.3 + 0.0j, -0.5 + 0.0j)
    table = (
        ("0.0268467778225", "0.150444148229"),
        ("0.0222940217983", "0.107632701309"),
        ("0.0193775211883", "0.0832300065481"),
        ("0.0173217152417", "0.0674667943276"),
        ("0.0302644475105", "0.186762288147"),
        ("0.0422038073974", "0.353665883561"),
        ("0.0572957745312", "2.62816178085"),
    )
    rows = tuple(
        {"ratio": Published(r, _E6), "bound": Published(bd, _E6)} for r, bd in table
    )
    return Fixture("ex3_3_joint", a, None, y, z_values, (dy,), (da,), {"rows": rows})


_BUILDERS = {
    "ex2_1": _ex2_1,
    "ex2_2": _ex2_2,
    "ex2_3": _ex2_3,
    "ex3_1_rhs": _ex3_1,
    "ex3_2_op": _ex3_2,
    "ex3_3_joint": _ex3_3,
}


def load_fixture(name: str) -> Fixture:
    """Return a fresh copy of the named fixture.

    Valid names: ex2_1, ex2_2, ex2_3, ex3_1_rhs, ex3_2_op, ex3_3_joint.
    """
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownFixture(
            f"unknown fixture {name!r}; valid names: {', '.join(FIXTURE_NAMES)}"
        ) from None
