"""Scattered-data kernel interpolation on a product of spheres.

The interpolant is s(x, z) = sum_j lambda_j f(x . x_j, z . z_j); for a
strictly positive definite kernel the Gram system has a unique solution at
any distinct nodes.  Merely positive definite kernels can produce singular
systems for unlucky node sets, which is handled by a small escalating
regularization ladder rather than failing outright.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError

from . import pd_oracle
from .constructions import _STATUS_RANK, PD, STRICT_PD, IsotropicKernel
from .pd_oracle import DISTINCT_PAIRS, FLAG_TOL, ProductPointSet, gram, verify_distinctness

#: escalation ladder applied when the Gram factorization fails
REG_LADDER = (1e-12, 1e-10, 1e-8)

_EVAL_NORM_TOL = 1e-9


class InterpolationError(RuntimeError):
    """Gram system could not be factorized even at maximal regularization."""

    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True)
class InterpolationProblem:
    nodes: ProductPointSet
    targets: np.ndarray
    kernel: IsotropicKernel

    def __post_init__(self):
        targets = np.asarray(self.targets, dtype=float).ravel()
        object.__setattr__(self, "targets", targets)
        if targets.size != self.nodes.n:
            raise ValueError(f"{targets.size} targets for {self.nodes.n} nodes")
        if _STATUS_RANK[self.kernel.claimed_status] < _STATUS_RANK[PD]:
            raise ValueError("interpolation requires a kernel claimed at least PD")
        if self.nodes.mode is None:
            verify_distinctness(self.nodes.xs, self.nodes.zs, DISTINCT_PAIRS, FLAG_TOL)


@dataclass(frozen=True)
class Interpolant:
    coefficients: np.ndarray
    nodes: ProductPointSet
    kernel: IsotropicKernel
    condition_estimate: float
    regularization: float


def solve(p: InterpolationProblem, reg: float = 0.0) -> Interpolant:
    """Solve (G + reg*I) lambda = targets by Cholesky factorization.

    On factorization failure the regularization escalates through
    {1e-12, 1e-10, 1e-8} (values not above ``reg`` are skipped) and the
    value actually used is recorded on the interpolant.  One step of
    iterative refinement keeps the nodal residual near machine level.  The
    condition estimate is the squared ratio of extreme Cholesky diagonal
    entries, a cheap surrogate for the spectral condition number.
    """
    if reg < 0:
        raise ValueError("regularization must be nonnegative")
    G = gram(p.kernel, p.nodes)
    y = p.targets
    ladder = [reg] + [r for r in REG_LADDER if r > reg]
    for used in ladder:
        try:
            factor = cho_factor(G + used * np.eye(p.nodes.n), lower=True)
        except LinAlgError:
            continue
        lam = cho_solve(factor, y)
        lam += cho_solve(factor, y - G @ lam - used * lam)
        diag = np.abs(np.diag(factor[0]))
        condition = float((diag.max() / diag.min()) ** 2)
        return Interpolant(lam, p.nodes, p.kernel, condition, used)
    min_eig = float(np.linalg.eigvalsh(G)[0])
    raise InterpolationError(
        f"Gram factorization failed up to regularization {ladder[-1]:g}; "
        f"min eigenvalue {min_eig:.6g}", min_eig)


def evaluate(interp: Interpolant, x, z) -> float:
    """Evaluate the interpolant at a product point (x, z) of unit vectors."""
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    for name, v, d in (("x", x, interp.nodes.m), ("z", z, interp.nodes.M)):
        if v.shape != (d + 1,):
            raise ValueError(f"{name} must have {d + 1} coordinates")
        if abs(np.linalg.norm(v) - 1.0) > _EVAL_NORM_TOL:
            raise ValueError(f"{name} is not a unit vector (norm {np.linalg.norm(v)!r})")
    t = np.clip(interp.nodes.xs @ x, -1.0, 1.0)
    s = np.clip(interp.nodes.zs @ z, -1.0, 1.0)
    vals = np.asarray(interp.kernel(t, s), dtype=float)
    return float(interp.coefficients @ vals)


def nodal_residual(p: InterpolationProblem, interp: Interpolant) -> float:
    """Max-norm residual ||G lambda - targets||_inf measured directly."""
    G = gram(p.kernel, p.nodes)
    return float(np.max(np.abs(G @ interp.coefficients - p.targets)))


def loo_error(p: InterpolationProblem) -> float:
    """Leave-one-out diagnostic: max over i of |s_{-i}(node_i) - target_i|.

    Performs n independent solves on n-1 nodes; requires a strict kernel so
    the subproblems stay uniquely solvable.
    """
    if p.nodes.n < 2:
        raise ValueError("leave-one-out needs at least two nodes")
    if p.kernel.claimed_status != STRICT_PD:
        raise ValueError("leave-one-out requires a strictly positive definite kernel")
    worst = 0.0
    for i in range(p.nodes.n):
        keep = np.arange(p.nodes.n) != i
        sub_nodes = ProductPointSet(p.nodes.m, p.nodes.M, p.nodes.xs[keep], p.nodes.zs[keep], p.nodes.mode)
        sub = InterpolationProblem(sub_nodes, p.targets[keep], p.kernel)
        interp = solve(sub)
        predicted = evaluate(interp, p.nodes.xs[i], p.nodes.zs[i])
        worst = max(worst, abs(predicted - p.targets[i]))
    return worst


def write_problem(p: InterpolationProblem, path) -> None:
    """Point-set text format plus a final ``targets:`` line."""
    pd_oracle.write_point_set(p.nodes, path)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write("targets: " + ",".join(f"{v:.17e}" for v in p.targets) + "\n")


def read_problem(path, kernel: IsotropicKernel) -> InterpolationProblem:
    """Read a problem written by :func:`write_problem`; the kernel is supplied."""
    with open(path, encoding="utf-8") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if not lines or not lines[-1].startswith("targets:"):
        raise ValueError(f"{path}: missing final 'targets:' line")
    targets = np.array([float(v) for v in lines[-1][len("targets:"):].split(",")])
    nodes = pd_oracle.parse_point_set(lines[:-1], DISTINCT_PAIRS, origin=str(path))
    return InterpolationProblem(nodes, targets, kernel)
