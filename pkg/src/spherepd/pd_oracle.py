"""Empirical positive-definiteness testing on sampled product point sets.

The ground truth for a kernel claim is the spectrum of its Gram matrix: a
kernel is positive definite when every Gram matrix at distinct points is
nonnegative definite, and strictly so of order n when those matrices are
nonsingular.  Randomized point sets can only falsify strictness, never prove
it, so the strictness oracles report PASS/FAIL over seeded trials and hand
back the witness seed on failure.
"""

from dataclasses import dataclass

import numpy as np

DISTINCT_PAIRS = "DISTINCT_PAIRS"
DISTINCT_COMPONENTWISE = "DISTINCT_COMPONENTWISE"

NONNEG_DEFINITE = "NONNEG_DEFINITE"
INDEFINITE = "INDEFINITE"

#: unit-norm slack for stored points
NORM_TOL = 1e-12
#: geodesic tolerance when verifying a distinctness flag
FLAG_TOL = 1e-9
#: geodesic separation enforced while sampling
SAMPLE_SEPARATION = 1e-6
_MAX_RESAMPLE_ROUNDS = 100


def geodesic_distances(points: np.ndarray) -> np.ndarray:
    """Pairwise geodesic (arc-length) distances between unit vectors."""
    dots = np.clip(points @ points.T, -1.0, 1.0)
    return np.arccos(dots)


def _coincident_pairs(points: np.ndarray, tol: float) -> np.ndarray:
    dist = geodesic_distances(points)
    close = dist <= tol
    iu = np.triu_indices(points.shape[0], k=1)
    rows, cols = iu[0][close[iu]], iu[1][close[iu]]
    return np.stack([rows, cols], axis=1) if rows.size else np.empty((0, 2), dtype=int)


@dataclass(frozen=True)
class ProductPointSet:
    """n paired unit vectors on S^m x S^M with a distinctness flag."""

    m: int
    M: int
    xs: np.ndarray
    zs: np.ndarray
    mode: str | None = None

    def __post_init__(self):
        xs = np.atleast_2d(np.asarray(self.xs, dtype=float))
        zs = np.atleast_2d(np.asarray(self.zs, dtype=float))
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "zs", zs)
        if xs.shape[0] != zs.shape[0]:
            raise ValueError("component point lists must have equal length")
        if xs.shape[1] != self.m + 1 or zs.shape[1] != self.M + 1:
            raise ValueError("coordinate count must be dimension + 1 on each axis")
        for name, pts in (("xs", xs), ("zs", zs)):
            norms = np.linalg.norm(pts, axis=1)
            if np.any(np.abs(norms - 1.0) > NORM_TOL):
                raise ValueError(f"{name} contains a vector of norm {norms[np.argmax(np.abs(norms - 1.0))]!r}")
        if self.mode is not None:
            verify_distinctness(xs, zs, self.mode, FLAG_TOL)

    @property
    def n(self) -> int:
        return self.xs.shape[0]


def verify_distinctness(xs: np.ndarray, zs: np.ndarray, mode: str, tol: float) -> None:
    """Raise if the point set violates the distinctness required by ``mode``."""
    if mode == DISTINCT_PAIRS:
        pairs_x = _coincident_pairs(xs, tol)
        if pairs_x.size:
            dz = geodesic_distances(zs)
            for i, j in pairs_x:
                if dz[i, j] <= tol:
                    raise ValueError(f"product points {i} and {j} coincide (tolerance {tol:g})")
    elif mode == DISTINCT_COMPONENTWISE:
        for name, pts in (("first", xs), ("second", zs)):
            pairs = _coincident_pairs(pts, tol)
            if pairs.size:
                i, j = pairs[0]
                raise ValueError(f"{name}-component points {i} and {j} coincide (tolerance {tol:g})")
    else:
        raise ValueError(f"unknown distinctness mode {mode!r}")


def _draw_unit(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    pts = np.empty((count, dim + 1))
    for i in range(count):
        while True:
            v = rng.standard_normal(dim + 1)
            norm = np.linalg.norm(v)
            if norm > 1e-8:
                pts[i] = v / norm
                break
    return pts


def sample_points(m: int, M: int, n: int, seed: int, mode: str = DISTINCT_PAIRS) -> ProductPointSet:
    """Uniform product points, deterministic under ``seed``.

    Points violating the requested distinctness at geodesic separation 1e-6
    are redrawn, for at most 100 rounds.
    """
    if n < 1:
        raise ValueError("need at least one point")
    if mode not in (DISTINCT_PAIRS, DISTINCT_COMPONENTWISE):
        raise ValueError(f"unknown distinctness mode {mode!r}")
    rng = np.random.default_rng(seed)
    xs = _draw_unit(rng, n, m)
    zs = _draw_unit(rng, n, M)
    for _ in range(_MAX_RESAMPLE_ROUNDS):
        if mode == DISTINCT_PAIRS:
            bad = set()
            pairs_x = _coincident_pairs(xs, SAMPLE_SEPARATION)
            if pairs_x.size:
                dz = geodesic_distances(zs)
                bad = {int(j) for i, j in pairs_x if dz[i, j] <= SAMPLE_SEPARATION}
            for j in sorted(bad):
                xs[j] = _draw_unit(rng, 1, m)[0]
                zs[j] = _draw_unit(rng, 1, M)[0]
            if not bad:
                return ProductPointSet(m, M, xs, zs, mode)
        else:
            bad_x = {int(j) for _, j in _coincident_pairs(xs, SAMPLE_SEPARATION)}
            bad_z = {int(j) for _, j in _coincident_pairs(zs, SAMPLE_SEPARATION)}
            for j in sorted(bad_x):
                xs[j] = _draw_unit(rng, 1, m)[0]
            for j in sorted(bad_z):
                zs[j] = _draw_unit(rng, 1, M)[0]
            if not bad_x and not bad_z:
                return ProductPointSet(m, M, xs, zs, mode)
    raise RuntimeError(f"could not reach {mode} separation after {_MAX_RESAMPLE_ROUNDS} rounds (n={n}, m={m}, M={M})")


def _eval_pairwise(f, T: np.ndarray, S: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(T, S), dtype=float)
        if vals.shape == T.shape:
            return vals
    except Exception:
        pass
    vals = np.empty_like(T)
    for mu in range(T.shape[0]):
        for nu in range(T.shape[1]):
            try:
                vals[mu, nu] = f(T[mu, nu], S[mu, nu])
            except Exception as exc:
                raise RuntimeError(f"kernel evaluation failed at matrix entry ({mu}, {nu})") from exc
    return vals


def gram(f, p: ProductPointSet) -> np.ndarray:
    """Gram matrix G[mu, nu] = f(x_mu . x_nu, z_mu . z_nu), dots clamped."""
    T = np.clip(p.xs @ p.xs.T, -1.0, 1.0)
    S = np.clip(p.zs @ p.zs.T, -1.0, 1.0)
    return _eval_pairwise(f, T, S)


@dataclass(frozen=True)
class GramReport:
    n: int
    min_eigenvalue: float
    tolerance: float
    verdict: str
    symmetry_residual: float


def min_gram_eigenvalue(f, p: ProductPointSet) -> float:
    """Smallest eigenvalue of the kernel's Gram matrix on ``p``."""
    G = gram(f, p)
    try:
        return float(np.linalg.eigvalsh(G)[0])
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigenvalue solve failed on a {p.n} x {p.n} Gram matrix") from exc


def test_pd(f, p: ProductPointSet, tol: float = 1e-8, scaled: bool = False) -> GramReport:
    """Symmetric-eigenvalue nonnegativity check of the Gram matrix.

    With ``scaled=True`` the acceptance threshold becomes tol * n * max|G|,
    tracking how eigenvalue perturbations grow with size and magnitude.
    """
    G = gram(f, p)
    residual = float(np.max(np.abs(G - G.T))) if p.n > 1 else 0.0
    try:
        min_eig = float(np.linalg.eigvalsh(G)[0])
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigenvalue solve failed on a {p.n} x {p.n} Gram matrix") from exc
    threshold = tol * p.n * float(np.max(np.abs(G))) if scaled else tol
    verdict = NONNEG_DEFINITE if min_eig >= -threshold else INDEFINITE
    return GramReport(p.n, min_eig, threshold, verdict, residual)


@dataclass(frozen=True)
class StrictnessResult:
    passed: bool
    witness_seed: int | None
    min_eigenvalue: float
    trials: int

    def __str__(self):
        if self.passed:
            return f"PASS min_eigenvalue={self.min_eigenvalue:.6g} trials={self.trials}"
        return f"FAIL witness_seed={self.witness_seed} min_eigenvalue={self.min_eigenvalue:.6g}"


def _strictness_scan(f, m, M, n, trials, seed, tol, mode) -> StrictnessResult:
    if n < 1 or trials < 1:
        raise ValueError("order and trial count must be positive")
    overall_min = np.inf
    for i in range(trials):
        trial_seed = seed + i
        p = sample_points(m, M, n, trial_seed, mode)
        min_eig = min_gram_eigenvalue(f, p)
        overall_min = min(overall_min, min_eig)
        if not min_eig > tol:
            return StrictnessResult(False, trial_seed, min_eig, i + 1)
    return StrictnessResult(True, None, float(overall_min), trials)


def test_strict(f, m: int, M: int, n: int, trials: int, seed: int, tol: float = 1e-10) -> StrictnessResult:
    """Falsification scan for strict positive definiteness of order n.

    Samples ``trials`` pair-distinct point sets (trial seeds seed, seed+1,
    ...) and fails on the first Gram matrix whose smallest eigenvalue is not
    above ``tol``.  A PASS means no counterexample was found, not a proof.
    """
    return _strictness_scan(f, m, M, n, trials, seed, tol, DISTINCT_PAIRS)


def test_dc_strict(f, m: int, M: int, n: int, trials: int, seed: int, tol: float = 1e-10) -> StrictnessResult:
    """Like :func:`test_strict`, but sampling componentwise-distinct sets."""
    return _strictness_scan(f, m, M, n, trials, seed, tol, DISTINCT_COMPONENTWISE)


def diagonal_restriction(f):
    """Univariate t -> f(t, t), the single-sphere diagonal restriction."""
    return lambda t: f(t, t)


def slice_restriction(f, axis: int = 1, value: float = 1.0):
    """Freeze one argument: axis 1 gives t -> f(t, value), axis 2 gives s -> f(value, s)."""
    if axis == 1:
        return lambda t: f(t, value)
    if axis == 2:
        return lambda s: f(value, s)
    raise ValueError("axis must be 1 or 2")


def write_point_set(p: ProductPointSet, path) -> None:
    """Write points as text: header, then per point the two coordinate blocks."""
    lines = [f"# m={p.m} M={p.M} n={p.n}"]
    for x, z in zip(p.xs, p.zs):
        xs_txt = ",".join(f"{c:.17e}" for c in x)
        zs_txt = ",".join(f"{c:.17e}" for c in z)
        lines.append(f"{xs_txt} | {zs_txt}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_point_set(lines: list[str], mode: str | None = None, origin: str = "<lines>") -> ProductPointSet:
    """Parse header + point lines of the point-set text format."""
    if not lines or not lines[0].startswith("#"):
        raise ValueError(f"{origin}: missing point-set header line")
    header = {}
    for token in lines[0].lstrip("#").split():
        key, _, val = token.partition("=")
        header[key] = val
    try:
        m, M, n = int(header["m"]), int(header["M"]), int(header["n"])
    except KeyError as exc:
        raise ValueError(f"{origin}: header missing key {exc}") from exc
    if len(lines) - 1 != n:
        raise ValueError(f"{origin}: expected {n} point lines, found {len(lines) - 1}")
    xs, zs = [], []
    for line in lines[1:]:
        left, sep, right = line.partition("|")
        if not sep:
            raise ValueError(f"{origin}: point line missing '|' separator: {line!r}")
        xs.append([float(c) for c in left.strip().split(",")])
        zs.append([float(c) for c in right.strip().split(",")])
    return ProductPointSet(m, M, np.array(xs), np.array(zs), mode)


def read_point_set(path, mode: str | None = None) -> ProductPointSet:
    """Read points written by :func:`write_point_set`."""
    with open(path, encoding="utf-8") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    return parse_point_set(lines, mode, origin=str(path))
