"""Gauss rules for the sphere weights and tensor Fourier analysis.

The one-dimensional weight for dimension m is w_m(t) = (1-t^2)^((m-2)/2);
products of spheres use the tensor weight w_m(t) * w_M(s).  Rules are built
by the Golub-Welsch symmetric-tridiagonal method from the analytically known
recurrence coefficients (the symmetric Jacobi case, so the diagonal is zero
and the nodes come out symmetric about the origin).

Coefficient grids hold truncated tensor expansion coefficients in one of two
normalizations: HAT (coefficients against the raw polynomials P_k^m) and
CHECK (against the normalized family R_k^m = P_k^m / P_k^m(1)), related
entrywise by check = P_k^m(1) * P_l^M(1) * hat.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .special_fn import (
    INFINITY,
    as_dim,
    gegenbauer_at_one,
    gegenbauer_table,
    is_infinite,
    ortho_constant,
)

HAT = "HAT"
CHECK = "CHECK"

#: grid built entrywise from a formula or another exact grid
PROVENANCE_EXACT = "exact"
#: grid obtained by numerical analysis; small negatives may be quadrature error
PROVENANCE_QUADRATURE = "quadrature"

#: extra nodes beyond the requested degree when analyzing a kernel
DEFAULT_NODE_MARGIN = 16


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights exact for polynomials against w_m on [-1, 1]."""

    m: int
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.nodes.size


def weight_integral(m) -> float:
    """Total mass of w_m on [-1, 1], i.e. tau_{m+1} / tau_m."""
    m = as_dim(m)
    alpha = 0.5 * (m - 2)
    return math.sqrt(math.pi) * math.exp(math.lgamma(alpha + 1.0) - math.lgamma(alpha + 1.5))


def gauss_rule(m, n_nodes: int) -> QuadratureRule:
    """Gaussian rule with ``n_nodes`` points for the weight w_m.

    Exact for polynomials of degree <= 2*n_nodes - 1.  For m = 1 the rule is
    the closed-form Chebyshev one (nodes cos((2i-1)pi/2n), equal weights
    pi/n); otherwise nodes and weights come from the eigen-decomposition of
    the recurrence's symmetric tridiagonal matrix.
    """
    m = as_dim(m)
    if is_infinite(m):
        raise ValueError("quadrature rules require a finite dimension")
    if n_nodes < 1:
        raise ValueError("a rule needs at least one node")
    if m == 1:
        i = np.arange(1, n_nodes + 1)
        nodes = np.cos((2 * i - 1) * math.pi / (2 * n_nodes))[::-1].copy()
        weights = np.full(n_nodes, math.pi / n_nodes)
        return QuadratureRule(m, nodes, weights)
    alpha = 0.5 * (m - 2)
    k = np.arange(1, n_nodes, dtype=float)
    offdiag = np.sqrt(k * (k + 2 * alpha) / ((2 * k + 2 * alpha) ** 2 - 1.0))
    try:
        vals, vecs = eigh_tridiagonal(np.zeros(n_nodes), offdiag)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigen-solver failed for m={m}, n_nodes={n_nodes}") from exc
    weights = weight_integral(m) * vecs[0] ** 2
    # zero diagonal makes the spectrum symmetric; enforce it exactly
    nodes = 0.5 * (vals - vals[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(m, nodes, weights)


def _eval_grid(f, t: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Evaluate f on the tensor grid, falling back to scalar loops."""
    try:
        vals = np.asarray(f(t[:, None], s[None, :]), dtype=float)
        if vals.shape == (t.size, s.size):
            return vals
    except Exception:
        pass
    vals = np.empty((t.size, s.size))
    for i, ti in enumerate(t):
        for j, sj in enumerate(s):
            try:
                vals[i, j] = f(ti, sj)
            except Exception as exc:
                raise RuntimeError(f"kernel evaluation failed at node (t={ti!r}, s={sj!r})") from exc
    return vals


def integrate_2d(f, rule_t: QuadratureRule, rule_s: QuadratureRule) -> float:
    """Tensor-product quadrature sum_i sum_j w_i v_j f(t_i, s_j)."""
    vals = _eval_grid(f, rule_t.nodes, rule_s.nodes)
    return float(rule_t.weights @ vals @ rule_s.weights)


@dataclass
class CoefficientGrid:
    """Truncated (K+1) x (L+1) matrix of tensor expansion coefficients.

    ``mode`` is HAT or CHECK; ``provenance`` records whether the entries were
    constructed exactly or estimated by quadrature (which decides how
    negative entries are judged during certification).
    """

    m: float
    M: float
    mode: str
    values: np.ndarray
    provenance: str = PROVENANCE_EXACT

    def __post_init__(self):
        self.m = as_dim(self.m)
        self.M = as_dim(self.M)
        if self.mode not in (HAT, CHECK):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.provenance not in (PROVENANCE_EXACT, PROVENANCE_QUADRATURE):
            raise ValueError(f"unknown provenance {self.provenance!r}")
        self.values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if self.values.ndim != 2:
            raise ValueError("coefficient grid must be a 2-d matrix")

    @property
    def K(self) -> int:
        return self.values.shape[0] - 1

    @property
    def L(self) -> int:
        return self.values.shape[1] - 1


def scale_at_one(m, kmax: int) -> np.ndarray:
    """Vector of P_k^m(1) for k <= kmax; all ones for INFINITY (monomials)."""
    m = as_dim(m)
    if is_infinite(m):
        return np.ones(kmax + 1)
    return np.array([gegenbauer_at_one(k, m) for k in range(kmax + 1)])


def to_check_mode(grid: CoefficientGrid) -> CoefficientGrid:
    """Rescale a HAT grid entrywise by P_k^m(1) P_l^M(1); identity on CHECK."""
    if grid.mode == CHECK:
        return CoefficientGrid(grid.m, grid.M, CHECK, grid.values.copy(), grid.provenance)
    scale = np.outer(scale_at_one(grid.m, grid.K), scale_at_one(grid.M, grid.L))
    return CoefficientGrid(grid.m, grid.M, CHECK, grid.values * scale, grid.provenance)


def to_hat_mode(grid: CoefficientGrid) -> CoefficientGrid:
    """Inverse rescaling of ``to_check_mode``; identity on HAT."""
    if grid.mode == HAT:
        return CoefficientGrid(grid.m, grid.M, HAT, grid.values.copy(), grid.provenance)
    scale = np.outer(scale_at_one(grid.m, grid.K), scale_at_one(grid.M, grid.L))
    return CoefficientGrid(grid.m, grid.M, HAT, grid.values / scale, grid.provenance)


def analyze(f, m, M, K: int, L: int, n_nodes: int | None = None) -> CoefficientGrid:
    """Fourier coefficients of f against the tensor polynomial family.

    Returns the HAT-mode grid with entries

        hat_{k,l} = (1 / (tau_k^m tau_l^M)) *
                    integral of f(t,s) P_k^m(t) P_l^M(s) w_m(t) w_M(s)

    for k <= K, l <= L, computed with ``n_nodes``-point Gauss rules per axis
    (default max(K, L) + 16).  f must be bounded on [-1, 1]^2; integrable
    singularities are not detected.
    """
    m = as_dim(m)
    M = as_dim(M)
    if is_infinite(m) or is_infinite(M):
        raise ValueError("analysis requires finite dimensions on both axes")
    if K < 0 or L < 0:
        raise ValueError("truncation degrees must be nonnegative")
    if n_nodes is None:
        n_nodes = max(K, L) + DEFAULT_NODE_MARGIN
    rule_t = gauss_rule(m, n_nodes)
    rule_s = gauss_rule(M, n_nodes)
    vals = _eval_grid(f, rule_t.nodes, rule_s.nodes)
    table_t = gegenbauer_table(K, m, rule_t.nodes)
    table_s = gegenbauer_table(L, M, rule_s.nodes)
    weighted = vals * np.outer(rule_t.weights, rule_s.weights)
    raw = table_t @ weighted @ table_s.T
    tau_t = np.array([ortho_constant(k, m) for k in range(K + 1)])
    tau_s = np.array([ortho_constant(l, M) for l in range(L + 1)])
    hat = raw / np.outer(tau_t, tau_s)
    return CoefficientGrid(m, M, HAT, hat, PROVENANCE_QUADRATURE)


def _format_dim(m) -> str:
    return "inf" if is_infinite(m) else str(int(m))


def _parse_dim(text: str):
    return INFINITY if text == "inf" else int(text)


def write_grid(grid: CoefficientGrid, path) -> None:
    """Write a grid as UTF-8 text: a header line, then ``k,l,value`` lines."""
    lines = [
        f"# mode={grid.mode} m={_format_dim(grid.m)} M={_format_dim(grid.M)} "
        f"K={grid.K} L={grid.L} provenance={grid.provenance}"
    ]
    for k in range(grid.K + 1):
        for l in range(grid.L + 1):
            lines.append(f"{k},{l},{grid.values[k, l]:.17e}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_grid(path) -> CoefficientGrid:
    """Read a grid written by :func:`write_grid`.

    The ``provenance`` header token is optional; absent, the grid is treated
    as quadrature-derived so that certification stays conservative.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError(f"{path}: missing grid header line")
    header = {}
    for token in lines[0].lstrip("#").split():
        key, _, val = token.partition("=")
        if not val:
            raise ValueError(f"{path}: malformed header token {token!r}")
        header[key] = val
    try:
        m = _parse_dim(header["m"])
        M = _parse_dim(header["M"])
        K = int(header["K"])
        L = int(header["L"])
        mode = header["mode"]
    except KeyError as exc:
        raise ValueError(f"{path}: header missing key {exc}") from exc
    provenance = header.get("provenance", PROVENANCE_QUADRATURE)
    values = np.zeros((K + 1, L + 1))
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"{path}: malformed grid line {line!r}")
        k, l = int(parts[0]), int(parts[1])
        if not (0 <= k <= K and 0 <= l <= L):
            raise ValueError(f"{path}: index ({k},{l}) outside grid {K}x{L}")
        values[k, l] = float(parts[2])
    return CoefficientGrid(m, M, mode, values, provenance)
