"""Distance to instability and distance to singularity.

For a stable matrix the distance to instability is the minimum over real
omega of 1 / ||(A - i*omega*I)^-1|| (the smallest singular value of
A - i*omega*I under the spectral norm).  The search scans the imaginary
axis and refines the best bracket by golden section; the axis suffices
because the reciprocal condition product has no interior minimum in the
open right half-plane.  Closed-form bounds come from the threshold value
g = min over the axis of kappa(i*omega, A):

    g * M(A) / 2  <=  d1  <=  2 * ||A|| * g / (1 - g)

with M(A) the spectral deviation.  The distance to singularity of an
invertible matrix is 1 / ||A^-1||.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotStable
from .linalg import EPS, NormKind, as_matrix, eigenvalues, inverse, operator_norm, require_square
from .spectra import sample, spectral_deviation, _spectral_quantities


@dataclass(frozen=True)
class SearchConfig:
    """Axis-scan parameters for the instability distance."""

    scan_points: int = 2001
    tol: float = 1e-8
    radius_factor: float = 1.25
    max_expansions: int = 3


@dataclass(frozen=True)
class InstabilityReport:
    stable: bool
    d1_estimate: float
    argmin_omega: float
    lower_bound: float
    upper_bound: float
    g: float


@dataclass(frozen=True)
class SingularityReport:
    d2: float
    epsilon_star: float
    witness_norm: float
    scalar_matrix: bool


def is_stable(a, margin: float = 0.0) -> bool:
    """True iff every eigenvalue has real part <= -margin."""
    res = eigenvalues(as_matrix(a))
    if not res.converged:
        raise NoConvergence("eigensolver did not converge")
    return bool((res.eigenvalues.real <= -margin).all())


def _golden_min(f, a: float, b: float, tol: float):
    """Golden-section minimum of f on [a, b]; returns the best point seen."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        if fc < best_f:
            best_x, best_f = c, fc
        if fd < best_f:
            best_x, best_f = d, fd
    return best_x, best_f


def _axis_values(m: np.ndarray, omegas: np.ndarray, kind: NormKind):
    """kappa1 and kappa along z = i*omega."""
    if kind is NormKind.SPECTRAL:
        q = _spectral_quantities(m, 1j * omegas)
        return q["kappa1"], q["kappa"]
    k1 = np.empty(omegas.shape)
    kap = np.empty(omegas.shape)
    for i, w in enumerate(omegas):
        s = sample(m, 1j * w, kind)
        k1[i] = s.kappa1
        kap[i] = s.kappa
    return k1, kap


def distance_to_instability(a, kind: NormKind = NormKind.SPECTRAL,
                            search: SearchConfig | None = None) -> InstabilityReport:
    """Estimate the instability distance of a stable matrix with bounds.

    Raises NotStable when an eigenvalue already has positive real part.
    Matrices with purely imaginary eigenvalues count as stable and come
    back with a zero (or near-zero) estimate.
    """
    m = require_square(as_matrix(a))
    search = search or SearchConfig()
    res = eigenvalues(m)
    if not res.converged:
        raise NoConvergence("eigensolver did not converge")
    if (res.eigenvalues.real > 0.0).any():
        raise NotStable("matrix has an eigenvalue in the open right half-plane")

    norm_a = operator_norm(m, kind)
    if norm_a == 0.0:
        return InstabilityReport(True, 0.0, 0.0, 0.0, 0.0, 0.0)

    radius = search.radius_factor * norm_a
    for _ in range(search.max_expansions + 1):
        omegas = np.linspace(-radius, radius, search.scan_points)
        k1, kap = _axis_values(m, omegas, kind)
        i1 = int(np.argmin(k1))
        ig = int(np.argmin(kap))
        # A minimum sitting on the scan boundary means the window is too
        # small; sigma_min(A - iwI) >= |w| - ||A|| rules this out eventually.
        if i1 not in (0, len(omegas) - 1) and ig not in (0, len(omegas) - 1):
            break
        radius *= 2.0

    def f_k1(w):
        return sample(m, 1j * w, kind).kappa1

    def f_kap(w):
        return sample(m, 1j * w, kind).kappa

    lo1 = omegas[max(i1 - 1, 0)]
    hi1 = omegas[min(i1 + 1, len(omegas) - 1)]
    w1, v1 = _golden_min(f_k1, lo1, hi1, search.tol)
    if k1[i1] <= v1:
        w1, v1 = float(omegas[i1]), float(k1[i1])

    log = omegas[max(ig - 1, 0)]
    hig = omegas[min(ig + 1, len(omegas) - 1)]
    _, vg = _golden_min(f_kap, log, hig, search.tol)
    g = min(float(kap[ig]), float(vg))

    dev = spectral_deviation(m, kind)
    lower = g * dev / 2.0
    upper = math.inf if g >= 1.0 else 2.0 * norm_a * g / (1.0 - g)
    return InstabilityReport(True, float(v1), float(w1), lower, upper, g)


def distance_to_singularity(a, kind: NormKind = NormKind.SPECTRAL) -> SingularityReport:
    """Distance to the nearest singular matrix: 1 / ||A^-1||.

    Under the spectral norm this equals the smallest singular value.
    Raises SingularMatrix when A is already numerically singular.  Scalar
    multiples of the identity are flagged in the report.
    """
    m = require_square(as_matrix(a))
    d2 = 1.0 / operator_norm(inverse(m), kind)
    n = m.shape[0]
    tol = n * EPS * max(float(np.abs(m).sum(axis=1).max()), 1.0)
    off = m - np.diag(np.diag(m))
    diag = np.diag(m)
    scalar = bool(np.abs(off).max(initial=0.0) <= tol
                  and np.abs(diag - diag[0]).max() <= tol)
    return SingularityReport(d2, d2, operator_norm(m, kind), scalar)
