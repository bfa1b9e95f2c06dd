"""Truncated expansions in the tensor basis R_k^m(t) R_l^M(s).

A kernel's isotropic part is positive definite on the product of spheres
exactly when its expansion coefficients are all nonnegative with finite sum,
so certification reduces to inspecting the grid.  Infinite-dimensional axes
use the monomial basis t^k, the limit of R_k^m as the dimension grows; the
normalized (CHECK-mode) coefficients converge along even dimensions, which
is what :func:`infinite_limit` estimates.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .special_fn import as_dim, clamp_unit, is_infinite, normalized_table
from .quadrature import (
    CHECK,
    CoefficientGrid,
    PROVENANCE_EXACT,
    PROVENANCE_QUADRATURE,
    analyze,
    to_check_mode,
)

PD_CERTIFIED = "PD_CERTIFIED"
NOT_PD = "NOT_PD"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SchoenbergExpansion:
    """Immutable truncated expansion; the grid is kept in CHECK mode."""

    grid: CoefficientGrid

    def __post_init__(self):
        object.__setattr__(self, "grid", to_check_mode(self.grid))

    @property
    def m(self):
        return self.grid.m

    @property
    def M(self):
        return self.grid.M

    @property
    def K(self) -> int:
        return self.grid.K

    @property
    def L(self) -> int:
        return self.grid.L

    def __call__(self, t, s):
        return synthesize(self, t, s)


def expansion_from_values(m, M, values, provenance=PROVENANCE_EXACT) -> SchoenbergExpansion:
    """Expansion from a matrix of CHECK-mode (normalized) coefficients."""
    return SchoenbergExpansion(CoefficientGrid(m, M, CHECK, values, provenance))


def synthesize(e: SchoenbergExpansion, t, s):
    """Evaluate the truncated expansion at (t, s).

    Scalars or broadcastable arrays are accepted; arrays are evaluated
    pairwise after broadcasting to a common shape.  At (1, 1) the value is
    the plain sum of the CHECK coefficients, since every normalized basis
    function equals 1 there.
    """
    tc = np.asarray(clamp_unit(t), dtype=float)
    sc = np.asarray(clamp_unit(s), dtype=float)
    tb, sb = np.broadcast_arrays(tc, sc)
    shape = tb.shape
    table_t = normalized_table(e.K, e.m, tb.ravel())
    table_s = normalized_table(e.L, e.M, sb.ravel())
    pointwise = ((e.grid.values.T @ table_t) * table_s).sum(axis=0)
    return float(pointwise[0]) if shape == () else pointwise.reshape(shape)


def coefficient_sum(e: SchoenbergExpansion) -> float:
    """Sum of all CHECK coefficients; equals the synthesized value at (1, 1)."""
    return float(e.grid.values.sum())


@dataclass(frozen=True)
class CertificationResult:
    status: str
    witness: tuple | None
    min_coefficient: float
    clamped_count: int
    tolerance: float

    def __str__(self):
        if self.status == PD_CERTIFIED:
            extra = f" (clamped {self.clamped_count} small negatives)" if self.clamped_count else ""
            return f"{PD_CERTIFIED}{extra}"
        return f"{self.status} witness={self.witness} min_coefficient={self.min_coefficient:.6g}"


def certify_pd(e: SchoenbergExpansion, cert_tol: float = 0.0) -> CertificationResult:
    """Certify nonnegativity of the coefficient grid.

    PD_CERTIFIED when every coefficient is >= -cert_tol (entries in
    [-cert_tol, 0) are counted as clamped).  A coefficient below -cert_tol
    refutes positive definiteness only if the grid is exact; on a
    quadrature-derived grid the verdict is INCONCLUSIVE, since analysis
    error can manufacture small negatives.
    """
    if cert_tol < 0:
        raise ValueError("certification tolerance must be nonnegative")
    values = e.grid.values
    flat_idx = int(np.argmin(values))
    witness = np.unravel_index(flat_idx, values.shape)
    min_val = float(values[witness])
    if min_val >= -cert_tol:
        clamped = int(np.count_nonzero(values < 0.0))
        return CertificationResult(PD_CERTIFIED, None, min_val, clamped, cert_tol)
    if e.grid.provenance == PROVENANCE_EXACT:
        return CertificationResult(NOT_PD, (int(witness[0]), int(witness[1])), min_val, 0, cert_tol)
    return CertificationResult(INCONCLUSIVE, (int(witness[0]), int(witness[1])), min_val, 0, cert_tol)


def _walk_coefficients(m: int, kmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Multipliers (c1, c2) taking normalized coefficients from m to m+2.

    c1 at k = 0 is the limit value 1 (the raw formula is 0/0 at m = 1).
    """
    k = np.arange(kmax + 1, dtype=float)
    c1 = np.empty(kmax + 1)
    c1[0] = 1.0
    if kmax >= 1:
        kk = k[1:]
        c1[1:] = (kk + m - 1.0) * (kk + m) / (m * (2.0 * kk + m - 1.0))
    c2 = (k + 1.0) * (k + 2.0) / (m * (2.0 * k + m + 3.0))
    return c1, c2


def dimension_walk(e: SchoenbergExpansion) -> SchoenbergExpansion:
    """Normalized coefficients at dimension m+2 from those at dimension m.

    Entry (k, l) of the result combines source entries (k, l) and (k+2, l),
    so the axis-1 truncation drops from K to K-2.  The walked coefficients
    of a kernel that is positive definite at the source dimension may be
    negative: nonnegativity at a higher dimension is the stronger condition,
    so this is a computation, not a certification.
    """
    m = as_dim(e.m)
    if is_infinite(m):
        raise ValueError("dimension walk requires a finite source dimension")
    if e.K < 2:
        raise ValueError("axis-1 truncation must be at least 2 to walk up")
    c1, c2 = _walk_coefficients(m, e.K - 2)
    vals = e.grid.values
    walked = c1[:, None] * vals[:-2, :] - c2[:, None] * vals[2:, :]
    return SchoenbergExpansion(CoefficientGrid(m + 2, e.M, CHECK, walked, e.grid.provenance))


def infinite_limit(f, M, K: int, L: int, m_sequence, n_nodes: int | None = None,
                   warn_threshold: float | None = None) -> tuple[CoefficientGrid, np.ndarray]:
    """Estimate the infinite-dimensional normalized coefficients of f.

    Analyzes f on (m, M) for each even m in ``m_sequence`` and takes the
    CHECK coefficients at the largest m as the limit estimate (no
    extrapolation: the plain last term keeps the diagnostic honest).

    Returns the limit grid (axis-1 dimension INFINITY) together with the
    entrywise last increment |grid(m_J) - grid(m_{J-1})|, NaN when the
    sequence has a single element.  If ``warn_threshold`` is given, a
    warning is issued when the largest increment exceeds it.
    """
    M = as_dim(M)
    if is_infinite(M):
        raise ValueError("axis 2 must stay finite; only axis 1 walks to INFINITY")
    dims = [as_dim(m) for m in m_sequence]
    if not dims:
        raise ValueError("m_sequence must be nonempty")
    if any(is_infinite(m) or m % 2 for m in dims):
        raise ValueError("m_sequence must consist of even finite dimensions")
    if any(b <= a for a, b in zip(dims, dims[1:])):
        raise ValueError("m_sequence must be strictly increasing")
    grids = [to_check_mode(analyze(f, m, M, K, L, n_nodes)).values for m in dims]
    if len(grids) >= 2:
        increment = np.abs(grids[-1] - grids[-2])
    else:
        increment = np.full_like(grids[-1], np.nan)
    if warn_threshold is not None and len(grids) >= 2 and np.max(increment) > warn_threshold:
        warnings.warn(
            f"infinite-limit increment {np.max(increment):.3g} above threshold "
            f"{warn_threshold:.3g} at m={dims[-1]}; extend m_sequence",
            stacklevel=2,
        )
    limit = CoefficientGrid(np.inf, M, CHECK, grids[-1], PROVENANCE_QUADRATURE)
    return limit, increment
