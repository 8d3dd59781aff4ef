"""Dense complex linear algebra kernels: LU, eigenvalues, SVD, norms.

Everything here is self-contained: numpy supplies array storage and
elementwise arithmetic, but factorizations, the eigensolver and the SVD are
implemented in this module.  All routines are deterministic for identical
inputs on the same platform.

Supported operator norms are the spectral norm (largest singular value), the
one-norm (max column abs-sum) and the infinity-norm (max row abs-sum), each
paired with the vector norm that induces it.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, NoConvergence, SingularMatrix

EPS = float(np.finfo(float).eps)

# One-sided Jacobi: a column pair is rotated while the off-diagonal Gram
# entry exceeds this relative threshold.
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 60

# Shifted-QR safeguards: total sweep cap is QR_ITERS_PER_N * n, with an
# exceptional shift every QR_EXCEPTIONAL_EVERY stalled iterations.
QR_ITERS_PER_N = 100
QR_EXCEPTIONAL_EVERY = 10


class NormKind(Enum):
    SPECTRAL = "spectral"
    ONE = "one"
    INFINITY = "infinity"


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalue multiset plus convergence bookkeeping."""

    eigenvalues: np.ndarray
    converged: bool
    iterations: int


@dataclass(frozen=True)
class SvdResult:
    """Singular values sorted descending."""

    singular_values: np.ndarray


@dataclass(frozen=True)
class LuFactorization:
    """Compact LU with the row permutation applied during pivoting."""

    lu: np.ndarray
    perm: np.ndarray
    swaps: int


def as_matrix(a) -> np.ndarray:
    """Validate and convert to a finite complex 2-D array."""
    m = np.array(a, dtype=complex, copy=True, order="C")
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.isfinite(m.view(float)).all():
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(a) -> np.ndarray:
    """Validate and convert to a finite complex 1-D array."""
    v = np.array(a, dtype=complex, copy=True, order="C")
    if v.ndim != 1 or v.shape[0] < 1:
        raise DimensionMismatch(f"expected a 1-D vector, got shape {v.shape}")
    if not np.isfinite(v.view(float)).all():
        raise ValueError("vector entries must be finite")
    return v


def require_square(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------

def operator_norm(a, kind: NormKind = NormKind.SPECTRAL) -> float:
    """Induced operator norm of a matrix under the given norm kind."""
    m = as_matrix(a)
    if kind is NormKind.SPECTRAL:
        return float(svd_stack(m[np.newaxis])[0, 0])
    if kind is NormKind.ONE:
        return float(np.abs(m).sum(axis=0).max())
    return float(np.abs(m).sum(axis=1).max())


def vector_norm(a, kind: NormKind = NormKind.SPECTRAL) -> float:
    """Vector norm paired with ``kind``: Euclidean / one / max."""
    v = as_vector(a)
    if kind is NormKind.SPECTRAL:
        return float(np.sqrt((v.real ** 2 + v.imag ** 2).sum()))
    if kind is NormKind.ONE:
        return float(np.abs(v).sum())
    return float(np.abs(v).max())


# ---------------------------------------------------------------------------
# LU with partial pivoting
# ---------------------------------------------------------------------------

def _pivot_tolerance(a: np.ndarray) -> float:
    # Scaled pivot test: n * eps * ||A||_inf avoids false singularity on
    # graded matrices while catching rank deficiency at working precision.
    return a.shape[0] * EPS * float(np.abs(a).sum(axis=1).max())


def lu_factor(a) -> LuFactorization:
    """LU factorization with partial pivoting.

    Raises SingularMatrix as soon as a pivot magnitude falls below the
    scaled tolerance n * eps * ||A||_inf.
    """
    m = require_square(as_matrix(a))
    n = m.shape[0]
    tol = _pivot_tolerance(m)
    if tol == 0.0:
        raise SingularMatrix("zero matrix")
    perm = np.arange(n)
    swaps = 0
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if abs(m[p, k]) < tol:
            raise SingularMatrix(
                f"pivot magnitude {abs(m[p, k]):.3e} below tolerance {tol:.3e} at step {k}"
            )
        if p != k:
            m[[k, p], :] = m[[p, k], :]
            perm[[k, p]] = perm[[p, k]]
            swaps += 1
        m[k + 1:, k] /= m[k, k]
        if k + 1 < n:
            m[k + 1:, k + 1:] -= np.outer(m[k + 1:, k], m[k, k + 1:])
    return LuFactorization(m, perm, swaps)


def lu_solve_factored(fac: LuFactorization, b: np.ndarray) -> np.ndarray:
    """Solve using an existing factorization; ``b`` may be a vector or matrix."""
    lu = fac.lu
    n = lu.shape[0]
    x = np.array(b, dtype=complex, copy=True)[fac.perm]
    for k in range(1, n):
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):
        if k + 1 < n:
            x[k] -= lu[k, k + 1:] @ x[k + 1:]
        x[k] /= lu[k, k]
    return x


def lu_solve(a, b) -> np.ndarray:
    """Solve A x = b by LU with partial pivoting."""
    m = require_square(as_matrix(a))
    v = as_vector(b)
    if v.shape[0] != m.shape[0]:
        raise DimensionMismatch(
            f"matrix is {m.shape[0]}x{m.shape[1]} but right-hand side has length {v.shape[0]}"
        )
    return lu_solve_factored(lu_factor(m), v)


def inverse(a) -> np.ndarray:
    """Explicit inverse via LU solves against the identity columns."""
    m = require_square(as_matrix(a))
    return lu_solve_factored(lu_factor(m), np.eye(m.shape[0], dtype=complex))


def determinant(a) -> complex:
    """Determinant by Gaussian elimination; exact zero pivots give det 0."""
    m = require_square(as_matrix(a))
    n = m.shape[0]
    det = 1.0 + 0.0j
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if m[p, k] == 0:
            return 0.0 + 0.0j
        if p != k:
            m[[k, p], :] = m[[p, k], :]
            det = -det
        det *= m[k, k]
        m[k + 1:, k + 1:] -= np.outer(m[k + 1:, k] / m[k, k], m[k, k + 1:])
    return complex(det)


# ---------------------------------------------------------------------------
# Eigenvalues: balancing -> Hessenberg -> implicitly shifted QR
# ---------------------------------------------------------------------------

def _balance(a: np.ndarray, max_passes: int = 32) -> np.ndarray:
    """Diagonal similarity scaling equalizing row/column norms (radix 2)."""
    m = a.copy()
    n = m.shape[0]
    if n < 2:
        return m
    radix, sqrdx = 2.0, 4.0
    for _ in range(max_passes):
        done = True
        for i in range(n):
            row = np.abs(m[i, :])
            col = np.abs(m[:, i])
            # Subtract the shared array elements so r, c can never round
            # negative (vectorized and scalar |.| may differ by one ulp).
            r = row.sum() - row[i]
            c = col.sum() - col[i]
            if c <= 0.0 or r <= 0.0:
                continue
            f, s = 1.0, c + r
            while c < r / radix:
                f *= radix
                c *= sqrdx
            while c > r * radix:
                f /= radix
                c /= sqrdx
            if (c + r) / f < 0.95 * s and np.isfinite(f) and f > 0.0:
                done = False
                m[i, :] /= f
                m[:, i] *= f
        if done:
            break
    return m


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Reduce to upper Hessenberg form by Householder reflections."""
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        xnorm = np.sqrt((x.real ** 2 + x.imag ** 2).sum())
        if xnorm == 0.0:
            continue
        v = x.copy()
        phase = v[0] / abs(v[0]) if v[0] != 0 else 1.0
        v[0] += phase * xnorm
        vn2 = (v.real ** 2 + v.imag ** 2).sum()
        if vn2 == 0.0:
            continue
        w = (2.0 / vn2) * (np.conj(v) @ h[k + 1:, :])
        h[k + 1:, :] -= np.outer(v, w)
        w = (2.0 / vn2) * (h[:, k + 1:] @ v)
        h[:, k + 1:] -= np.outer(w, np.conj(v))
        h[k + 2:, k] = 0.0
    return h


def _givens(f: complex, g: complex):
    """Rotation [[c, s], [-conj(s), c]] (c real) sending (f, g) to (r, 0)."""
    if g == 0:
        return 1.0, 0.0 + 0.0j
    if f == 0:
        return 0.0, np.conj(g) / abs(g)
    d = np.sqrt(abs(f) ** 2 + abs(g) ** 2)
    return abs(f) / d, (f / abs(f)) * np.conj(g) / d


def eigenvalues(a) -> SpectrumResult:
    """All eigenvalues (with multiplicity) of a square complex matrix.

    Balances, reduces to Hessenberg form, then runs implicitly shifted
    single-shift QR with Wilkinson shifts; every QR_EXCEPTIONAL_EVERY
    stalled sweeps an exceptional shift breaks potential cycling.  If the
    sweep cap is hit the partial result is returned with converged=False.
    """
    m = require_square(as_matrix(a))
    n = m.shape[0]
    if n == 1:
        return SpectrumResult(np.array([m[0, 0]]), True, 0)
    h = _hessenberg(_balance(m))
    hnorm = max(float(np.abs(h).sum(axis=1).max()), EPS)
    eigs = []
    hi = n - 1
    total = 0
    stall = 0
    cap = QR_ITERS_PER_N * n
    while hi >= 0:
        for i in range(1, hi + 1):
            thr = EPS * (abs(h[i - 1, i - 1]) + abs(h[i, i]))
            if thr == 0.0:
                thr = EPS * hnorm
            if abs(h[i, i - 1]) <= thr:
                h[i, i - 1] = 0.0
        if hi == 0 or h[hi, hi - 1] == 0.0:
            eigs.append(h[hi, hi])
            hi -= 1
            stall = 0
            continue
        if total >= cap:
            return SpectrumResult(np.array(eigs), False, total)
        lo = hi
        while lo > 0 and h[lo, lo - 1] != 0.0:
            lo -= 1
        stall += 1
        if stall % QR_EXCEPTIONAL_EVERY == 0:
            shift = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            # Wilkinson shift: trailing 2x2 eigenvalue closest to h[hi, hi].
            w11, w12 = h[hi - 1, hi - 1], h[hi - 1, hi]
            w21, w22 = h[hi, hi - 1], h[hi, hi]
            half = (w11 + w22) / 2.0
            disc = np.sqrt((w11 - w22) * (w11 - w22) / 4.0 + w12 * w21 + 0j)
            shift = half + disc if abs(half + disc - w22) <= abs(half - disc - w22) else half - disc
        x = h[lo, lo] - shift
        y = h[lo + 1, lo]
        for k in range(lo, hi):
            c, s = _givens(x, y)
            rk, rk1 = h[k, :].copy(), h[k + 1, :].copy()
            h[k, :] = c * rk + s * rk1
            h[k + 1, :] = -np.conj(s) * rk + c * rk1
            ck, ck1 = h[:, k].copy(), h[:, k + 1].copy()
            h[:, k] = c * ck + np.conj(s) * ck1
            h[:, k + 1] = -s * ck + c * ck1
            if k + 1 < hi:
                x = h[k + 1, k]
                y = h[k + 2, k]
        total += 1
    return SpectrumResult(np.array(eigs), True, total)


# ---------------------------------------------------------------------------
# One-sided Jacobi SVD, batched over a stack of matrices
# ---------------------------------------------------------------------------

def svd_stack(mats, compute_uv: bool = False,
              tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """One-sided Jacobi SVD of a stack of matrices with identical shape.

    Parameters
    ----------
    mats : array-like, shape (B, m, n)
        Batch of complex matrices.
    compute_uv : bool
        When true returns (U, s, Vh) with U of shape (B, m, k), s of shape
        (B, k) descending and Vh of shape (B, k, n), k = min(m, n);
        otherwise returns s only.

    Each matrix in the batch follows exactly the rotation schedule it would
    follow alone, so results are identical for any batch partitioning.
    """
    a = np.ascontiguousarray(np.asarray(mats, dtype=complex))
    if a.ndim != 3:
        raise DimensionMismatch(f"expected a (B, m, n) stack, got shape {a.shape}")
    nb, m, n = a.shape
    if m < n:
        if not compute_uv:
            return svd_stack(np.conj(a.transpose(0, 2, 1)), False, tol, max_sweeps)
        u, s, vh = svd_stack(np.conj(a.transpose(0, 2, 1)), True, tol, max_sweeps)
        return np.conj(vh.transpose(0, 2, 1)), s, np.conj(u.transpose(0, 2, 1))

    # Column-major working layout: w[b, j, :] is column j of matrix b.
    w = np.ascontiguousarray(a.transpose(0, 2, 1))
    v = None
    if compute_uv:
        v = np.zeros((nb, n, n), dtype=complex)
        v[:, np.arange(n), np.arange(n)] = 1.0

    out_w = np.empty_like(w)
    out_v = np.empty_like(v) if compute_uv else None
    idx = np.arange(nb)

    for _ in range(max_sweeps):
        if idx.size == 0:
            break
        rotated = np.zeros(idx.size, dtype=bool)
        for p in range(n - 1):
            for q in range(p + 1, n):
                wp = w[:, p, :]
                wq = w[:, q, :]
                alpha = (wp.real ** 2 + wp.imag ** 2).sum(axis=1)
                beta = (wq.real ** 2 + wq.imag ** 2).sum(axis=1)
                gamma = (np.conj(wp) * wq).sum(axis=1)
                gm = np.abs(gamma)
                # sqrt before multiplying so the threshold cannot underflow;
                # exactly-zero columns never rotate.
                sel = (gm > tol * (np.sqrt(alpha) * np.sqrt(beta))) \
                    & (alpha > 0.0) & (beta > 0.0)
                if not sel.any():
                    continue
                gs = gm[sel]
                gsel = gamma[sel]
                with np.errstate(over="ignore"):
                    # componentwise real division stays finite for denormal gs
                    omega_bar = (gsel.real / gs) - 1j * (gsel.imag / gs)
                    zeta = (beta[sel] - alpha[sel]) / (2.0 * gs)
                    # hypot keeps the tangent finite for any zeta; a zero
                    # tangent means the pair is already diagonal at working
                    # precision.
                    t = np.where(zeta >= 0.0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(1.0, zeta))
                act = t != 0.0
                if not act.any():
                    continue
                if not act.all():
                    sel[np.nonzero(sel)[0][~act]] = False
                    t = t[act]
                    omega_bar = omega_bar[act]
                rotated |= sel
                cd = np.hypot(1.0, t)
                c = (1.0 / cd)[:, np.newaxis]
                s = (t / cd)[:, np.newaxis]
                ob = omega_bar[:, np.newaxis]
                wps, wqs = wp[sel], wq[sel]
                w[sel, p, :] = c * wps - (ob * s) * wqs
                w[sel, q, :] = s * wps + (ob * c) * wqs
                if compute_uv:
                    vp, vq = v[sel, p, :], v[sel, q, :]
                    v[sel, p, :] = c * vp - (ob * s) * vq
                    v[sel, q, :] = s * vp + (ob * c) * vq
        done = ~rotated
        if done.any():
            out_w[idx[done]] = w[done]
            if compute_uv:
                out_v[idx[done]] = v[done]
            w = w[rotated]
            if compute_uv:
                v = v[rotated]
            idx = idx[rotated]
    if idx.size:
        raise NoConvergence(f"Jacobi SVD did not converge within {max_sweeps} sweeps")

    svals = np.sqrt((out_w.real ** 2 + out_w.imag ** 2).sum(axis=2))
    order = np.argsort(-svals, axis=1, kind="stable")
    svals = np.take_along_axis(svals, order, axis=1)
    if not compute_uv:
        return svals
    out_w = np.take_along_axis(out_w, order[:, :, np.newaxis], axis=1)
    out_v = np.take_along_axis(out_v, order[:, :, np.newaxis], axis=1)
    safe = np.where(svals > 0.0, svals, 1.0)[:, :, np.newaxis]
    u = (out_w / safe).transpose(0, 2, 1)
    vh = np.conj(out_v)
    return u, svals, vh


def svd(a, compute_uv: bool = True):
    """SVD of a single matrix; see ``svd_stack`` for conventions."""
    m = as_matrix(a)
    if not compute_uv:
        return svd_stack(m[np.newaxis])[0]
    u, s, vh = svd_stack(m[np.newaxis], compute_uv=True)
    return u[0], s[0], vh[0]


def singular_values(a) -> SvdResult:
    """Singular values of a matrix, sorted descending."""
    return SvdResult(svd_stack(as_matrix(a)[np.newaxis])[0])
