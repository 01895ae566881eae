"""
Geometry Core Module

Small dense symmetric linear algebra and the symmetric-function kernel used
by every curvature computation: a cyclic Jacobi eigensolver, elementary
symmetric functions, k-th mean curvatures, Newton tensors and the
conversion of fundamental forms to a symmetric shape operator.

All functions are pure and operate on immutable values.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from warpcurv.errors import ArgumentError, DegenerateMetricError, NumericalFailure

logger = logging.getLogger(__name__)

MIN_DIM = 2
MAX_DIM = 8  # fiber n <= 7, ambient tensors are (n+1)x(n+1)

JACOBI_MAX_SWEEPS = 30
JACOBI_THRESHOLD = 1e-14


# =============================================================================
# VALUE TYPES
# =============================================================================

def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SymMatrix:
    """
    Symmetric n x n real matrix.

    The constructor symmetrizes its input, so entries[i, j] == entries[j, i]
    holds exactly afterwards.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ArgumentError(f"SymMatrix needs a square array, got shape {a.shape}")
        if not MIN_DIM <= a.shape[0] <= MAX_DIM:
            raise ArgumentError(f"SymMatrix dimension {a.shape[0]} outside [{MIN_DIM}, {MAX_DIM}]")
        if not np.all(np.isfinite(a)):
            raise NumericalFailure("SymMatrix entries must be finite", {"entries": a.tolist()})
        sym = 0.5 * (a + a.T)
        object.__setattr__(self, "entries", _frozen(sym))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls(np.eye(n))

    @classmethod
    def diagonal(cls, values: Sequence[float]) -> "SymMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))

    def norm_inf(self) -> float:
        """Largest absolute entry."""
        return float(np.max(np.abs(self.entries)))

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted ascending with orthonormal eigenvectors as columns."""

    values: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(np.array(self.values, dtype=float)))
        object.__setattr__(self, "basis", _frozen(np.array(self.basis, dtype=float)))

    def reconstruct(self) -> np.ndarray:
        """Q diag(values) Q^T."""
        return (self.basis * self.values) @ self.basis.T


@dataclass(frozen=True)
class CurvatureProfile:
    """
    Symmetric-function data of a shape operator.

    sigma[k] and hk[k] run over k = 0..n, newton[k] over k = 0..n-1.
    The Newton tensors live in the same frame as the shape operator they
    came from; curvature_data always passes the whitened one.
    """

    principal: tuple[float, ...]
    sigma: tuple[float, ...]
    hk: tuple[float, ...]
    newton: tuple[SymMatrix, ...]

    @property
    def n(self) -> int:
        return len(self.principal)

    @property
    def mean_curvature(self) -> float:
        return self.hk[1]

    @property
    def umbilicity_defect(self) -> float:
        """max_i |lambda_i - H|."""
        h = self.hk[1]
        return max(abs(lam - h) for lam in self.principal)


# =============================================================================
# EIGEN SOLVER
# =============================================================================

def _normalize_signs(basis: np.ndarray) -> np.ndarray:
    """First nonzero component of every eigenvector positive."""
    out = basis.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nz = np.flatnonzero(np.abs(col) > 1e-300)
        if nz.size and col[nz[0]] < 0:
            out[:, j] = -col
    return out


def sym_eigen(S: SymMatrix) -> Spectrum:
    """
    Cyclic Jacobi eigen-decomposition.

    Rotations run over (p, q) pairs in row order for at most
    JACOBI_MAX_SWEEPS sweeps; the sweep stops once every off-diagonal entry
    is below JACOBI_THRESHOLD * ||S||.

    Raises:
        NumericalFailure: if the sweep cap is reached first.
    """
    a = np.array(S.entries, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = S.norm_inf()
    if scale == 0.0:
        return Spectrum(np.zeros(n), np.eye(n))
    threshold = JACOBI_THRESHOLD * scale

    converged = False
    for _sweep in range(JACOBI_MAX_SWEEPS + 1):
        off = np.max(np.abs(a[np.triu_indices(n, 1)]))
        if off <= threshold:
            converged = True
            break
        if _sweep == JACOBI_MAX_SWEEPS:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= threshold:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                sign = 1.0 if theta >= 0.0 else -1.0
                t = sign / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                a[p, q] = 0.0
                a[q, p] = 0.0
                v = v @ rot

    if not converged:
        raise NumericalFailure(
            f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps",
            {"matrix": S.entries.tolist()},
        )

    values = np.diag(a).copy()
    basis = _normalize_signs(v)
    # ascending values; ties broken by the (sign-normalized) vectors, descending lexicographic
    keys = [tuple([values[j]] + [-x for x in basis[:, j]]) for j in range(n)]
    order = sorted(range(n), key=lambda j: keys[j])
    return Spectrum(values[order], basis[:, order])


# =============================================================================
# SYMMETRIC FUNCTIONS
# =============================================================================

def _check_order(n: int, k: int) -> None:
    if not 0 <= k <= n:
        raise ArgumentError(f"order k={k} outside [0, {n}]")


def elementary_symmetric_all(lam: Sequence[float]) -> list[float]:
    """sigma_0..sigma_n by multiplying out prod(x + lambda_i)."""
    coeffs = [1.0] + [0.0] * len(lam)
    for i, value in enumerate(lam):
        value = float(value)
        for j in range(i + 1, 0, -1):
            coeffs[j] += value * coeffs[j - 1]
    return coeffs


def elementary_symmetric(lam: Sequence[float], k: int) -> float:
    """sigma_k(lambda) via the coefficient recurrence."""
    _check_order(len(lam), k)
    return elementary_symmetric_all(lam)[k]


def mean_curvature_k(lam: Sequence[float], k: int) -> float:
    """H_k = sigma_k / C(n, k)."""
    n = len(lam)
    _check_order(n, k)
    return elementary_symmetric_all(lam)[k] / math.comb(n, k)


def newton_tensors(A: SymMatrix) -> CurvatureProfile:
    """
    Full curvature profile of a symmetric shape operator.

    T_0 = I and T_k = sigma_k I - A T_{k-1} for k = 1..n-1, expressed in the
    same frame as A.
    """
    spectrum = sym_eigen(A)
    lam = [float(x) for x in spectrum.values]
    n = len(lam)
    sigma = elementary_symmetric_all(lam)
    hk = [sigma[k] / math.comb(n, k) for k in range(n + 1)]

    ident = np.eye(n)
    tensors = [SymMatrix(ident)]
    prev = ident
    for k in range(1, n):
        current = sigma[k] * ident - A.entries @ prev
        tensors.append(SymMatrix(current))
        prev = current

    return CurvatureProfile(
        principal=tuple(lam),
        sigma=tuple(sigma),
        hk=tuple(hk),
        newton=tuple(tensors),
    )


# =============================================================================
# FUNDAMENTAL FORMS
# =============================================================================

def cholesky_factor(g: SymMatrix) -> np.ndarray:
    """Lower Cholesky factor of a positive definite form."""
    try:
        return np.linalg.cholesky(g.entries)
    except np.linalg.LinAlgError as e:
        raise DegenerateMetricError(
            "first fundamental form is not positive definite",
            {"metric": g.entries.tolist()},
        ) from e


def whiten(L: np.ndarray, form: np.ndarray) -> np.ndarray:
    """L^{-1} form L^{-T}."""
    half = np.linalg.solve(L, form)
    return np.linalg.solve(L, half.T)


def shape_from_forms(g: SymMatrix, h: SymMatrix) -> SymMatrix:
    """
    Symmetric shape operator L^{-1} h L^{-T} with g = L L^T.

    It is similar to g^{-1} h, so its eigenvalues are the principal
    curvatures.
    """
    if g.n != h.n:
        raise ArgumentError(f"form dimensions differ: {g.n} vs {h.n}")
    L = cholesky_factor(g)
    return SymMatrix(whiten(L, h.entries))


@dataclass(frozen=True)
class KernelSelftestReport:
    """Deviations of the geometry-core invariants on random matrices."""

    samples: int
    newton_closure: float
    trace_identity: float
    trace_product_identity: float
    congruence_invariance: float
    tolerance: float = 1e-9
    passed: bool = field(init=False)

    def __post_init__(self):
        worst = max(self.newton_closure, self.trace_identity,
                    self.trace_product_identity, self.congruence_invariance)
        object.__setattr__(self, "passed", bool(worst <= self.tolerance))


def kernel_selftest(samples: int = 200, seed: int = 42, dims: Sequence[int] = (2, 3, 4, 5)) -> KernelSelftestReport:
    """Check Newton closure, trace identities and congruence invariance."""
    rng = np.random.default_rng(seed)
    closure = trace_dev = product_dev = congruence = 0.0
    for i in range(samples):
        n = dims[i % len(dims)]
        raw = rng.normal(size=(n, n))
        A = SymMatrix(raw + raw.T)
        profile = newton_tensors(A)
        sigma = profile.sigma
        for k in range(1, n):
            expected = sigma[k] * np.eye(n) - A.entries @ profile.newton[k - 1].entries
            closure = max(closure, float(np.max(np.abs(expected - profile.newton[k].entries))))
        for k in range(n):
            trace_dev = max(trace_dev, abs(profile.newton[k].trace() - (n - k) * sigma[k]))
        for k in range(1, n + 1):
            product = float(np.trace(A.entries @ profile.newton[k - 1].entries))
            product_dev = max(product_dev, abs(product - k * sigma[k]))

        base = rng.normal(size=(n, n))
        g = SymMatrix(base @ base.T + n * np.eye(n))
        h = SymMatrix(rng.normal(size=(n, n)))
        M = rng.normal(size=(n, n)) + 2.0 * np.eye(n)
        direct = sym_eigen(shape_from_forms(g, h)).values
        moved = sym_eigen(shape_from_forms(SymMatrix(M.T @ g.entries @ M),
                                          SymMatrix(M.T @ h.entries @ M))).values
        congruence = max(congruence, float(np.max(np.abs(direct - moved))))

    report = KernelSelftestReport(samples, closure, trace_dev, product_dev, congruence)
    logger.info(f"🧮 Kernel self-test: {'passed' if report.passed else 'FAILED'} ({samples} samples)")
    return report
