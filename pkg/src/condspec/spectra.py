"""Pointwise and grid evaluation of pseudospectrum quantities.

For a square matrix A and shift z this module computes the resolvent-based
diagnostics ||A - zI||, ||(A - zI)^-1|| and the two reciprocal condition
quantities

    kappa(z, A)  = 1 / (||A - zI|| * ||(A - zI)^-1||)
    kappa1(z, A) = 1 / ||(A - zI)^-1||

whose sublevel sets are the condition pseudospectrum and the pseudospectrum.
Membership tests use the non-strict boundary convention (the level set
itself belongs to the set).  Grid evaluation and the single-point sampler
share one code path, so a grid node always carries exactly the value the
sampler returns at that point.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidEpsilon, NoConvergence, SingularMatrix
from .linalg import (
    EPS,
    NormKind,
    as_matrix,
    eigenvalues,
    inverse,
    operator_norm,
    require_square,
    svd_stack,
)

# Nodes per chunk in batched grid evaluation, scaled down for larger matrices
# to bound the memory of the shifted-matrix stack.
_CHUNK_ENTRIES = 4_000_000


@dataclass(frozen=True)
class ResolventSample:
    """All scalar diagnostics at one point z.

    ``resolvent_norm`` and ``cond`` are ``math.inf`` when z is numerically
    in the spectrum; ``kappa`` and ``kappa1`` are 0 there.  ``cond`` is
    clamped to >= 1 (the exact value can round a hair below 1).
    """

    z: complex
    shifted_norm: float
    resolvent_norm: float
    cond: float
    kappa: float
    kappa1: float


class Quantity(Enum):
    KAPPA = "kappa"
    KAPPA1 = "kappa1"
    COND = "cond"
    RESOLVENT_NORM = "resolvent_norm"


class Lemma(Enum):
    LEM2 = "lem2"  # pseudospectrum inside condition pseudospectrum
    LEM3 = "lem3"  # condition pseudospectrum inside pseudospectrum
    LEM1 = "lem1"  # equivalence of the two memberships at z = 0


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("grid window must have positive extent")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 nodes per axis")

    def nodes(self):
        """Return (re, im, Z) with Z[j, i] = re[i] + 1j * im[j]."""
        re = np.linspace(self.re_min, self.re_max, self.nx)
        im = np.linspace(self.im_min, self.im_max, self.ny)
        return re, im, re[np.newaxis, :] + 1j * im[:, np.newaxis]


@dataclass(frozen=True)
class ScalarField:
    """One nonnegative real value per grid node (+inf allowed)."""

    grid: GridSpec
    quantity: Quantity
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.grid.ny, self.grid.nx):
            raise ValueError(
                f"field shape {self.values.shape} does not match grid "
                f"({self.grid.ny}, {self.grid.nx})"
            )


@dataclass(frozen=True)
class InclusionCertificate:
    """Outcome of a falsification search for one of the set inclusions."""

    lemma: Lemma
    epsilon: float
    checked_points: int
    violations: list = field(default_factory=list)
    vacuous: bool = False

    @property
    def passed(self) -> bool:
        return not self.violations


def _spectral_quantities(a: np.ndarray, z_flat: np.ndarray) -> dict:
    """Vectorized diagnostics at each shift in ``z_flat`` (spectral norm)."""
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    total = z_flat.shape[0]
    smax = np.empty(total)
    smin = np.empty(total)
    chunk = max(1, _CHUNK_ENTRIES // (n * n))
    for lo in range(0, total, chunk):
        zs = z_flat[lo:lo + chunk]
        stack = a[np.newaxis, :, :] - zs[:, np.newaxis, np.newaxis] * eye[np.newaxis, :, :]
        sv = svd_stack(stack)
        smax[lo:lo + len(zs)] = sv[:, 0]
        smin[lo:lo + len(zs)] = sv[:, -1]
    singular = (smax == 0.0) | (smin < n * EPS * smax)
    with np.errstate(divide="ignore", over="ignore"):
        res = np.where(singular, np.inf, 1.0 / np.where(smin > 0.0, smin, 1.0))
        cond = np.where(singular, np.inf, np.maximum(smax * res, 1.0))
        kap = np.where(singular, 0.0, 1.0 / cond)
        kap1 = np.where(singular, 0.0, 1.0 / res)
    return {
        "shifted_norm": smax,
        "resolvent_norm": res,
        "cond": cond,
        "kappa": kap,
        "kappa1": kap1,
    }


def sample(a, z: complex, kind: NormKind = NormKind.SPECTRAL) -> ResolventSample:
    """Evaluate all resolvent diagnostics at one point.

    Singularity of A - zI is encoded (resolvent_norm = inf, kappa =
    kappa1 = 0), never raised.  Under the spectral norm the resolvent norm
    comes from the smallest singular value; under the one/infinity norms it
    is the norm of the explicitly computed inverse.
    """
    m = require_square(as_matrix(a))
    z = complex(z)
    if kind is NormKind.SPECTRAL:
        q = _spectral_quantities(m, np.array([z]))
        return ResolventSample(
            z,
            float(q["shifted_norm"][0]),
            float(q["resolvent_norm"][0]),
            float(q["cond"][0]),
            float(q["kappa"][0]),
            float(q["kappa1"][0]),
        )
    shifted = m - z * np.eye(m.shape[0], dtype=complex)
    shifted_norm = operator_norm(shifted, kind)
    try:
        res = operator_norm(inverse(shifted), kind)
    except SingularMatrix:
        return ResolventSample(z, shifted_norm, math.inf, math.inf, 0.0, 0.0)
    cond = max(shifted_norm * res, 1.0)
    return ResolventSample(z, shifted_norm, res, cond, 1.0 / cond, 1.0 / res)


def kappa(a, z: complex, kind: NormKind = NormKind.SPECTRAL) -> float:
    """Reciprocal condition product at z; 0 on the spectrum, in [0, 1]."""
    return sample(a, z, kind).kappa


def kappa1(a, z: complex, kind: NormKind = NormKind.SPECTRAL) -> float:
    """Reciprocal resolvent norm at z; 0 on the spectrum."""
    return sample(a, z, kind).kappa1


def in_pseudospectrum(a, z: complex, epsilon: float,
                      kind: NormKind = NormKind.SPECTRAL) -> bool:
    """Membership of z in the epsilon-pseudospectrum (boundary included)."""
    if epsilon <= 0.0:
        raise InvalidEpsilon(f"epsilon must be positive, got {epsilon}")
    return sample(a, z, kind).kappa1 <= epsilon


def in_condition_pseudospectrum(a, z: complex, epsilon: float,
                                kind: NormKind = NormKind.SPECTRAL) -> bool:
    """Membership of z in the epsilon-condition pseudospectrum.

    Defined for 0 < epsilon <= 1; at epsilon = 1 the set is the whole
    plane, so membership is true without computation.
    """
    if epsilon <= 0.0 or epsilon > 1.0:
        raise InvalidEpsilon(f"epsilon must lie in (0, 1], got {epsilon}")
    if epsilon == 1.0:
        return True
    return sample(a, z, kind).kappa <= epsilon


def spectral_deviation(a, kind: NormKind = NormKind.SPECTRAL) -> float:
    """Largest distance, in operator norm, from A to its own eigenvalues:
    max over eigenvalues lam of ||A - lam I||."""
    m = require_square(as_matrix(a))
    res = eigenvalues(m)
    if not res.converged:
        raise NoConvergence("eigensolver did not converge")
    n = m.shape[0]
    eye = np.eye(n, dtype=complex)
    lams = res.eigenvalues
    if kind is NormKind.SPECTRAL:
        stack = m[np.newaxis, :, :] - lams[:, np.newaxis, np.newaxis] * eye[np.newaxis, :, :]
        return float(svd_stack(stack)[:, 0].max())
    return max(operator_norm(m - lam * eye, kind) for lam in lams)


def condspec_radius_bound(a, epsilon: float,
                          kind: NormKind = NormKind.SPECTRAL) -> float:
    """Radius (1 + eps) / (1 - eps) * ||A|| containing the eps-condition
    pseudospectrum; used to size search windows and default grids."""
    if not 0.0 < epsilon < 1.0:
        raise InvalidEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    return (1.0 + epsilon) / (1.0 - epsilon) * operator_norm(a, kind)


def _grid_quantities(a, grid: GridSpec, kind: NormKind) -> dict:
    m = require_square(as_matrix(a))
    _, _, z = grid.nodes()
    if kind is NormKind.SPECTRAL:
        q = _spectral_quantities(m, z.ravel())
        return {k: v.reshape(z.shape) for k, v in q.items()}
    out = {k: np.empty(z.shape) for k in
           ("shifted_norm", "resolvent_norm", "cond", "kappa", "kappa1")}
    for j in range(grid.ny):
        for i in range(grid.nx):
            s = sample(m, z[j, i], kind)
            out["shifted_norm"][j, i] = s.shifted_norm
            out["resolvent_norm"][j, i] = s.resolvent_norm
            out["cond"][j, i] = s.cond
            out["kappa"][j, i] = s.kappa
            out["kappa1"][j, i] = s.kappa1
    return out


def grid_eval(a, grid: GridSpec, quantity: Quantity,
              kind: NormKind = NormKind.SPECTRAL) -> ScalarField:
    """Evaluate one quantity on every grid node.

    Node (j, i) carries the value of ``sample`` at
    z = re_min + i * dre + 1j * (im_min + j * dim); the result does not
    depend on evaluation order.
    """
    vals = _grid_quantities(a, grid, kind)[quantity.value]
    return ScalarField(grid, quantity, vals)


def kappa_fields(a, grid: GridSpec,
                 kind: NormKind = NormKind.SPECTRAL):
    """Both kappa and kappa1 fields from a single grid pass."""
    q = _grid_quantities(a, grid, kind)
    return (ScalarField(grid, Quantity.KAPPA, q["kappa"]),
            ScalarField(grid, Quantity.KAPPA1, q["kappa1"]))


def check_inclusion(a, lemma: Lemma, epsilon: float, grid: GridSpec,
                    kind: NormKind = NormKind.SPECTRAL,
                    fields=None) -> InclusionCertificate:
    """Falsification search for one of the set-inclusion lemmas.

    lem2: every grid node in the eps-pseudospectrum must lie in the
    condition pseudospectrum at level 2*eps/M(A); when that level reaches 1
    the inclusion is vacuous (the superset is the whole plane) and the
    certificate passes flagged.  lem3: every node in the condition
    pseudospectrum at level eps/(eps + 2||A||) must lie in the
    eps-pseudospectrum.  lem1 checks the membership equivalence at z = 0
    only (level eps/||A||).

    ``fields`` may carry a precomputed (kappa_field, kappa1_field) pair for
    the same grid and norm to amortize grid evaluation across calls.
    """
    if epsilon <= 0.0:
        raise InvalidEpsilon(f"epsilon must be positive, got {epsilon}")
    m = require_square(as_matrix(a))

    if lemma is Lemma.LEM1:
        level = epsilon / operator_norm(m, kind) if operator_norm(m, kind) > 0 else math.inf
        in_pseudo = in_pseudospectrum(m, 0.0, epsilon, kind)
        in_cond = True if level >= 1.0 else in_condition_pseudospectrum(m, 0.0, level, kind)
        violations = [] if in_pseudo == in_cond else [0j]
        return InclusionCertificate(lemma, epsilon, 1, violations)

    if lemma is Lemma.LEM2:
        dev = spectral_deviation(m, kind)
        level = math.inf if dev == 0.0 else 2.0 * epsilon / dev
    else:
        level = epsilon / (epsilon + 2.0 * operator_norm(m, kind))
    if level >= 1.0:
        return InclusionCertificate(lemma, epsilon, 0, [], vacuous=True)

    if fields is not None:
        kappa_field, kappa1_field = fields
        kap, kap1 = kappa_field.values, kappa1_field.values
    else:
        q = _grid_quantities(m, grid, kind)
        kap, kap1 = q["kappa"], q["kappa1"]
    _, _, z = grid.nodes()
    if lemma is Lemma.LEM2:
        bad = (kap1 <= epsilon) & ~(kap <= level)
    else:
        bad = (kap <= level) & ~(kap1 <= epsilon)
    return InclusionCertificate(lemma, epsilon, int(z.size), list(z[bad]))
