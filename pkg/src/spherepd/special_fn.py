"""Gegenbauer polynomial family for spheres, with sphere-surface constants.

The dimension parameter ``m`` selects the ultraspherical family P_k^m with
index lambda = (m-1)/2, orthogonal on [-1, 1] against the weight
(1-t^2)^((m-2)/2).  For m = 2 this is the Legendre family; for m = 1 the
lambda -> 0 degeneration is replaced by the Chebyshev convention
P_k^1(t) = cos(k*arccos t) with squared norms pi (k = 0) and pi/2 (k >= 1).

The distinguished value ``INFINITY`` (math.inf) selects the monomial family
t^k, the pointwise limit of the normalized polynomials P_k^m(t)/P_k^m(1)
as m grows.
"""

import math

import numpy as np

INFINITY = math.inf

#: inputs within this distance outside [-1, 1] are clamped, beyond it rejected
DOMAIN_SLACK = 1e-12

#: switch to log-space evaluation of P_k^m(1) above this k+m to avoid overflow
_AT_ONE_LOG_THRESHOLD = 60


def as_dim(value):
    """Normalize a sphere dimension: a positive int, or INFINITY."""
    if value == INFINITY:
        return INFINITY
    m = int(value)
    if m != value or m < 1:
        raise ValueError(f"sphere dimension must be a positive integer or INFINITY, got {value!r}")
    return m


def is_infinite(m) -> bool:
    return m == INFINITY


def clamp_unit(t, slack: float = DOMAIN_SLACK):
    """Clamp values to [-1, 1], rejecting anything farther than ``slack`` outside.

    Accepts scalars or arrays; returns a float64 scalar/array.
    """
    arr = np.asarray(t, dtype=float)
    if np.any(np.abs(arr) > 1.0 + slack):
        worst = float(np.max(np.abs(arr)))
        raise ValueError(f"argument outside [-1, 1] beyond slack {slack:g}: |t| = {worst!r}")
    clipped = np.clip(arr, -1.0, 1.0)
    return float(clipped) if np.isscalar(t) or arr.ndim == 0 else clipped


def gegenbauer_table(kmax: int, m, t) -> np.ndarray:
    """Evaluate P_0^m, ..., P_kmax^m at the points ``t``.

    Parameters
    ----------
    kmax : int
        Largest degree, >= 0.
    m : int
        Finite sphere dimension (>= 1).
    t : array_like
        Points in [-1, 1] (clamped within the domain slack).

    Returns
    -------
    ndarray of shape (kmax+1, len(t)), row k holding P_k^m(t).
    """
    m = as_dim(m)
    if is_infinite(m):
        raise ValueError("gegenbauer_table requires a finite dimension")
    if kmax < 0:
        raise ValueError("degree must be nonnegative")
    x = np.atleast_1d(clamp_unit(t))
    table = np.empty((kmax + 1, x.size))
    if m == 1:
        # Chebyshev convention: P_k^1(t) = cos(k*arccos t)
        theta = np.arccos(x)
        for k in range(kmax + 1):
            table[k] = np.cos(k * theta)
        return table
    lam = 0.5 * (m - 1)
    table[0] = 1.0
    if kmax >= 1:
        table[1] = 2.0 * lam * x
    for k in range(2, kmax + 1):
        table[k] = (2.0 * (k + lam - 1.0) * x * table[k - 1]
                    - (k + 2.0 * lam - 2.0) * table[k - 2]) / k
    return table


def gegenbauer(k: int, m, t):
    """P_k^m(t), the degree-k ultraspherical polynomial for dimension m.

    ``t`` may be a scalar or array in [-1, 1]; m must be finite.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    m = as_dim(m)
    if is_infinite(m):
        raise ValueError("gegenbauer requires a finite dimension; use normalized_gegenbauer for INFINITY")
    x = clamp_unit(t)
    vals = gegenbauer_table(k, m, x)[k]
    return float(vals[0]) if np.isscalar(x) else vals.reshape(np.shape(x))


def gegenbauer_at_one(k: int, m) -> float:
    """P_k^m(1) by the rising-factorial closed form (m-1)_k / k!.

    Evaluated in log space once k+m is large, since the Gamma ratios
    overflow long before the result does.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    m = as_dim(m)
    if is_infinite(m):
        raise ValueError("gegenbauer_at_one requires a finite dimension")
    if m == 1 or k == 0:
        return 1.0
    if k + m <= _AT_ONE_LOG_THRESHOLD:
        num = 1.0
        for j in range(k):
            num *= m - 1 + j
        return num / math.factorial(k)
    log_val = math.lgamma(k + m - 1) - math.lgamma(m - 1) - math.lgamma(k + 1)
    return math.exp(log_val)


def normalized_gegenbauer(k: int, m, t):
    """R_k^m(t) = P_k^m(t) / P_k^m(1); the monomial t^k when m is INFINITY."""
    m = as_dim(m)
    x = clamp_unit(t)
    if is_infinite(m):
        vals = np.atleast_1d(x) ** k
        return float(vals[0]) if np.isscalar(x) else vals.reshape(np.shape(x))
    vals = gegenbauer_table(k, m, x)[k] / gegenbauer_at_one(k, m)
    return float(vals[0]) if np.isscalar(x) else vals.reshape(np.shape(x))


def normalized_table(kmax: int, m, t) -> np.ndarray:
    """Rows R_0^m(t), ..., R_kmax^m(t); monomial rows t^k for m = INFINITY."""
    m = as_dim(m)
    x = np.atleast_1d(clamp_unit(t))
    if is_infinite(m):
        return np.vander(x, kmax + 1, increasing=True).T.copy()
    table = gegenbauer_table(kmax, m, x)
    at_one = np.array([gegenbauer_at_one(k, m) for k in range(kmax + 1)])
    return table / at_one[:, None]


def surface_area(d: int) -> float:
    """Surface area of the unit sphere in R^d: 2 pi^(d/2) / Gamma(d/2)."""
    if d < 1:
        raise ValueError("ambient dimension must be >= 1")
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def ortho_constant(k: int, m) -> float:
    """Squared weighted L2 norm of P_k^m against (1-t^2)^((m-2)/2).

    For m >= 2 this is (tau_{m+1}/tau_m) * (m-1)/(2k+m-1) * P_k^m(1), with
    tau_d the surface area of the unit sphere in R^d.  The m = 1 convention
    is the Chebyshev one: pi for k = 0 and pi/2 for k >= 1.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    m = as_dim(m)
    if is_infinite(m):
        raise ValueError("ortho_constant requires a finite dimension")
    if m == 1:
        return math.pi if k == 0 else math.pi / 2.0
    ratio = surface_area(m + 1) / surface_area(m)
    return ratio * (m - 1.0) / (2.0 * k + m - 1.0) * gegenbauer_at_one(k, m)


def poisson_kernel(m, r: float, t):
    """Closed form (1-r^2) / (1-2tr+r^2)^((m+1)/2) of the generating series.

    Equals sum_k ((2k+m-1)/(m-1)) P_k^m(t) r^k for 0 <= r < 1 and m >= 2;
    its weighted integral over [-1, 1] is tau_{m+1}/tau_m.
    """
    m = as_dim(m)
    if is_infinite(m):
        raise ValueError("poisson_kernel requires a finite dimension")
    if not 0.0 <= r < 1.0:
        raise ValueError("radius must lie in [0, 1)")
    x = clamp_unit(t)
    return (1.0 - r * r) / (1.0 - 2.0 * x * r + r * r) ** ((m + 1) / 2.0)
