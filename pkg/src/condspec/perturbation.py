"""Perturbation reports for the shifted linear system A x - z x = y.

Each operation solves the unperturbed and perturbed systems, measures the
observed relative change of the solution, and attaches the certified bounds
derived from kappa / kappa1 of the matrix.  A bound that is not applicable
(shift numerically on the spectrum, eigensolver failure, or the
resolvent-weighted perturbation reaching 1) is reported as None with a
reason, never as +inf.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    NoConvergence,
    SingularMatrix,
    SingularShift,
    ZeroRhs,
)
from .linalg import (
    NormKind,
    as_matrix,
    as_vector,
    lu_factor,
    lu_solve_factored,
    operator_norm,
    require_square,
    vector_norm,
)
from .spectra import sample, spectral_deviation

# Bound comparisons allow this much relative slack for roundoff.
HOLDS_SLACK = 1e-12


def _leq(observed: float, bound) -> bool:
    if bound is None:
        return True
    return observed <= bound + HOLDS_SLACK * (1.0 + abs(bound))


def _geq(observed: float, bound: float) -> bool:
    return observed >= bound - HOLDS_SLACK * (1.0 + abs(bound))


def _ratio(num: float, den: float) -> float:
    if num == 0.0:
        return 0.0
    return num / den if den != 0.0 else math.inf


@dataclass(frozen=True)
class RhsPerturbReport:
    """Observed relative error against the two-sided kappa sandwich."""

    x: np.ndarray
    dx: np.ndarray
    rel_observed: float
    rel_rhs: float
    lower: float
    upper: float | None
    holds: bool
    na_reasons: dict = field(default_factory=dict)


@dataclass(frozen=True)
class OperatorPerturbReport:
    """Observed ratios against the pseudospectrum and condition bounds."""

    x: np.ndarray
    dx: np.ndarray
    ratio_x: float
    ratio_xpdx: float
    bound_pseudo_x: float | None
    bound_pseudo_xpdx: float | None
    bound_cond_x: float | None
    bound_cond_xpdx: float | None
    holds: bool
    na_reasons: dict = field(default_factory=dict)


@dataclass(frozen=True)
class JointPerturbReport:
    """Observed relative error against the joint-perturbation bound."""

    x: np.ndarray
    dx: np.ndarray
    rel_observed: float
    contraction: float
    bound: float | None
    holds: bool
    na_reasons: dict = field(default_factory=dict)


def _shifted_factor(a: np.ndarray, z: complex):
    shifted = a - z * np.eye(a.shape[0], dtype=complex)
    try:
        return shifted, lu_factor(shifted)
    except SingularMatrix as exc:
        raise SingularShift(f"shift {z} is numerically in the spectrum") from exc


def _check_dim(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    if v.shape[0] != m.shape[0]:
        raise DimensionMismatch(
            f"matrix is {m.shape[0]}x{m.shape[1]} but vector has length {v.shape[0]}"
        )
    return v


def solve_shifted(a, z: complex, y, kind: NormKind = NormKind.SPECTRAL) -> np.ndarray:
    """Solve (A - zI) x = y; raises SingularShift near the spectrum."""
    m = require_square(as_matrix(a))
    v = _check_dim(m, as_vector(y))
    _, fac = _shifted_factor(m, complex(z))
    return lu_solve_factored(fac, v)


def perturb_rhs(a, z: complex, y, dy,
                kind: NormKind = NormKind.SPECTRAL) -> RhsPerturbReport:
    """Perturb the right-hand side: (A - zI)(x + dx) = y + dy.

    The observed ||dx||/||x|| is sandwiched by
    kappa * ||dy||/||y|| <= ||dx||/||x|| <= (1/kappa) * ||dy||/||y||.
    """
    m = require_square(as_matrix(a))
    z = complex(z)
    yv = _check_dim(m, as_vector(y))
    dyv = _check_dim(m, as_vector(dy))
    ny = vector_norm(yv, kind)
    if ny == 0.0:
        raise ZeroRhs("y must be nonzero")
    _, fac = _shifted_factor(m, z)
    x = lu_solve_factored(fac, yv)
    dx = lu_solve_factored(fac, dyv)
    rel_observed = _ratio(vector_norm(dx, kind), vector_norm(x, kind))
    rel_rhs = vector_norm(dyv, kind) / ny
    kap = sample(m, z, kind).kappa
    na = {}
    lower = kap * rel_rhs
    if kap > 0.0:
        upper = rel_rhs / kap
    else:
        upper = None
        na["upper"] = "shift is numerically in the spectrum (kappa = 0)"
    holds = _geq(rel_observed, lower) and _leq(rel_observed, upper)
    return RhsPerturbReport(x, dx, rel_observed, rel_rhs, lower, upper, holds, na)


def perturb_operator(a, z: complex, y, da,
                     kind: NormKind = NormKind.SPECTRAL) -> OperatorPerturbReport:
    """Perturb the operator: (A + dA - zI)(x + dx) = y.

    Bounds: ||dx||/||x|| <= ||dA||/kappa1(z, A+dA) and <= 2||dA|| /
    (M1 * kappa(z, A+dA)); ||dx||/||x+dx|| <= ||dA||/kappa1(z, A) and
    <= 2||dA|| / (M2 * kappa(z, A)), with M1, M2 the spectral deviations
    of the perturbed and unperturbed matrices.
    """
    m = require_square(as_matrix(a))
    z = complex(z)
    yv = _check_dim(m, as_vector(y))
    dm = require_square(as_matrix(da))
    if dm.shape != m.shape:
        raise DimensionMismatch(f"perturbation shape {dm.shape} != matrix shape {m.shape}")
    mp = m + dm

    _, fac = _shifted_factor(m, z)
    _, fac_p = _shifted_factor(mp, z)
    x = lu_solve_factored(fac, yv)
    xp = lu_solve_factored(fac_p, yv)
    dx = xp - x

    ndx = vector_norm(dx, kind)
    ratio_x = _ratio(ndx, vector_norm(x, kind))
    ratio_xpdx = _ratio(ndx, vector_norm(xp, kind))
    nda = operator_norm(dm, kind)

    na = {}

    def pseudo_bound(mat, label):
        k1 = sample(mat, z, kind).kappa1
        if k1 > 0.0:
            return nda / k1
        na[label] = "shift is numerically in the spectrum (kappa1 = 0)"
        return None

    def cond_bound(mat, label):
        kap = sample(mat, z, kind).kappa
        try:
            dev = spectral_deviation(mat, kind)
        except NoConvergence:
            na[label] = "eigensolver did not converge"
            return None
        if kap > 0.0 and dev > 0.0:
            return 2.0 * nda / (dev * kap)
        na[label] = ("shift is numerically in the spectrum (kappa = 0)"
                     if kap == 0.0 else "spectral deviation is zero (scalar matrix)")
        return None

    bound_pseudo_x = pseudo_bound(mp, "bound_pseudo_x")
    bound_pseudo_xpdx = pseudo_bound(m, "bound_pseudo_xpdx")
    bound_cond_x = cond_bound(mp, "bound_cond_x")
    bound_cond_xpdx = cond_bound(m, "bound_cond_xpdx")

    holds = (_leq(ratio_x, bound_pseudo_x) and _leq(ratio_x, bound_cond_x)
             and _leq(ratio_xpdx, bound_pseudo_xpdx) and _leq(ratio_xpdx, bound_cond_xpdx))
    return OperatorPerturbReport(
        x, dx, ratio_x, ratio_xpdx,
        bound_pseudo_x, bound_pseudo_xpdx, bound_cond_x, bound_cond_xpdx,
        holds, na,
    )


def perturb_joint(a, z: complex, y, da, dy,
                  kind: NormKind = NormKind.SPECTRAL) -> JointPerturbReport:
    """Perturb operator and right-hand side: (A + dA - zI)(x + dx) = y + dy.

    When ||(A - zI)^-1 dA|| < 1 the observed relative error is bounded by

        (||dy||/||y|| + ||dA||/||A - zI||) / (kappa * (1 - ||(A-zI)^-1 dA||));

    otherwise the bound is reported as not applicable.
    """
    m = require_square(as_matrix(a))
    z = complex(z)
    yv = _check_dim(m, as_vector(y))
    dyv = _check_dim(m, as_vector(dy))
    dm = require_square(as_matrix(da))
    if dm.shape != m.shape:
        raise DimensionMismatch(f"perturbation shape {dm.shape} != matrix shape {m.shape}")
    ny = vector_norm(yv, kind)
    if ny == 0.0:
        raise ZeroRhs("y must be nonzero")

    shifted, fac = _shifted_factor(m, z)
    try:
        fac_p = lu_factor(shifted + dm)
    except SingularMatrix as exc:
        raise SingularShift(f"shift {z} is numerically in the spectrum of A + dA") from exc
    x = lu_solve_factored(fac, yv)
    xp = lu_solve_factored(fac_p, yv + dyv)
    dx = xp - x
    rel_observed = _ratio(vector_norm(dx, kind), vector_norm(x, kind))

    minv = lu_solve_factored(fac, np.eye(m.shape[0], dtype=complex))
    contraction = operator_norm(minv @ dm, kind)
    kap = sample(m, z, kind).kappa

    na = {}
    if kap == 0.0:
        bound = None
        na["bound"] = "shift is numerically in the spectrum (kappa = 0)"
    elif contraction >= 1.0:
        bound = None
        na["bound"] = "resolvent-weighted perturbation reaches 1"
    else:
        rel_rhs = vector_norm(dyv, kind) / ny
        rel_op = operator_norm(dm, kind) / operator_norm(shifted, kind)
        bound = (rel_rhs + rel_op) / (kap * (1.0 - contraction))
    holds = _leq(rel_observed, bound)
    return JointPerturbReport(x, dx, rel_observed, contraction, bound, holds, na)
