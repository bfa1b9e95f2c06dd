"""Closed-form isotropic kernels on products of spheres with known PD status.

Two construction routes are provided: tensor products of single-sphere
positive definite parts, and compositions g(arccos t, arccos s) with g a
completely monotonic function of two variables.  Only concrete parametric
completely monotonic families are implemented (exponentials, inverse
powers, and their positive sums and products); the general
measure-representation of such functions has no constructive analogue.

Claimed statuses are conservative labels, and every claim is meant to be
backed by the empirical Gram oracles.  Strictness claims follow the
completely-monotonic route; for families constant along one axis (for
example an inverse power with one exponent zero) strictness genuinely holds
only on configurations whose components are distinct, which is all a
randomized falsifier can probe anyway.
"""

import re
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .special_fn import clamp_unit

PD = "PD"
STRICT_PD = "STRICT_PD"
DC_STRICT_PD = "DC_STRICT_PD"
UNKNOWN = "UNKNOWN"

_STATUS_RANK = {UNKNOWN: 0, PD: 1, DC_STRICT_PD: 2, STRICT_PD: 3}


@dataclass(frozen=True)
class IsotropicKernel:
    """A bivariate function on [-1, 1]^2 with a claimed PD status."""

    evaluator: object
    label: str
    claimed_status: str
    provenance: str

    def __call__(self, t, s):
        return self.evaluator(t, s)


def _fmt(x: float) -> str:
    return f"{float(x):g}"


def constant_kernel(c: float) -> IsotropicKernel:
    """The constant kernel; positive definite (never strict) when c >= 0."""
    status = PD if c >= 0 else UNKNOWN

    def evaluator(t, s, _c=float(c)):
        return np.full(np.broadcast_shapes(np.shape(t), np.shape(s)), _c)

    return IsotropicKernel(evaluator, f"const:c={_fmt(c)}", status, f"constant {c}")


def product_kernel(f1, g1, f1_strict: bool = False, g1_strict: bool = False,
                   label: str = "prod") -> IsotropicKernel:
    """Tensor product (t, s) -> f1(t) * g1(s) of single-sphere PD parts.

    The product of positive definite parts is positive definite (Schur
    product).  It is claimed strict when the caller asserts one factor is
    strict on its sphere and the other is positive at 1.
    """
    strict = (f1_strict and float(g1(1.0)) > 0.0) or (g1_strict and float(f1(1.0)) > 0.0)
    status = STRICT_PD if strict else PD
    return IsotropicKernel(lambda t, s: np.asarray(f1(clamp_unit(t))) * np.asarray(g1(clamp_unit(s))),
                           label, status, "tensor product of single-sphere parts")


def cm_exponential(a: float, b: float) -> IsotropicKernel:
    """Geodesic-exponential kernel exp(-a*arccos t - b*arccos s), a, b > 0.

    Strictly positive definite on every product of spheres: the geodesic
    distances are kernels of negative type, so the exponential of their
    negative weighted sum has nonsingular Gram matrices at distinct points.
    """
    if a <= 0 or b <= 0:
        raise ValueError("exponential rates must be positive (the a=b=0 case is the constant kernel)")

    def evaluator(t, s):
        return np.exp(-a * np.arccos(clamp_unit(t)) - b * np.arccos(clamp_unit(s)))

    return IsotropicKernel(evaluator, f"cm_exp:a={_fmt(a)},b={_fmt(b)}", STRICT_PD,
                           f"completely monotonic exp(-{a}u-{b}v) composed with geodesic distances")


def cm_inverse_power(alpha: float, beta: float) -> IsotropicKernel:
    """Inverse-power kernel (1+arccos t)^-alpha (1+arccos s)^-beta.

    Completely monotonic for alpha, beta >= 0; claimed strict when some
    exponent is positive, plain PD for the constant alpha = beta = 0 case.
    """
    if alpha < 0 or beta < 0:
        raise ValueError("inverse-power exponents must be nonnegative")
    status = STRICT_PD if alpha + beta > 0 else PD

    def evaluator(t, s):
        u = np.arccos(clamp_unit(t))
        v = np.arccos(clamp_unit(s))
        return (1.0 + u) ** (-alpha) * (1.0 + v) ** (-beta)

    return IsotropicKernel(evaluator, f"cm_pow:alpha={_fmt(alpha)},beta={_fmt(beta)}", status,
                           f"completely monotonic (1+u)^-{alpha}(1+v)^-{beta} composed with geodesic distances")


SUM = "SUM"
PRODUCT = "PRODUCT"


def combine(kernels, op: str = SUM, weights=None) -> IsotropicKernel:
    """Pointwise weighted sum or product of kernels, with conservative status.

    A sum is strict as soon as one summand is strict and the rest are at
    least PD; a product is claimed strict only when every factor is strict
    (both factor Grams nonsingular makes their Schur product nonsingular).
    """
    kernels = list(kernels)
    if not kernels:
        raise ValueError("combine needs at least one kernel")
    ranks = [_STATUS_RANK[k.claimed_status] for k in kernels]
    if op == SUM:
        if weights is None:
            weights = [1.0] * len(kernels)
        weights = [float(w) for w in weights]
        if len(weights) != len(kernels) or any(w <= 0 for w in weights):
            raise ValueError("sum weights must be positive, one per kernel")
        if min(ranks) >= _STATUS_RANK[PD]:
            status_rank = max(ranks)
        else:
            status_rank = _STATUS_RANK[UNKNOWN]

        def evaluator(t, s, _ks=kernels, _ws=weights):
            return sum(w * np.asarray(k(t, s), dtype=float) for k, w in zip(_ks, _ws))

        label = "sum:" + "+".join(f"{_fmt(w)}*{k.label}" for k, w in zip(kernels, weights))
    elif op == PRODUCT:
        if weights is not None:
            raise ValueError("weights apply only to sums")
        status_rank = min(ranks)

        def evaluator(t, s, _ks=kernels):
            out = np.asarray(_ks[0](t, s), dtype=float).copy()
            for k in _ks[1:]:
                out *= np.asarray(k(t, s), dtype=float)
            return out

        label = "product:" + "*".join(k.label for k in kernels)
    else:
        raise ValueError(f"unknown combination op {op!r}")
    status = {v: k for k, v in _STATUS_RANK.items()}[status_rank]
    return IsotropicKernel(evaluator, label, status, f"{op.lower()} of {len(kernels)} kernels")


def _parse_factor(text: str):
    """Parse a univariate factor spec: poly(c0,c1,...) or exp(a).

    Returns (callable, strict_flag, canonical_text).  Polynomial factors
    must have nonnegative coefficients (monomials t^j restrict positive
    definite parts from the infinite-dimensional sphere to every S^m).
    """
    match = re.fullmatch(r"poly\(([^()]*)\)", text)
    if match:
        coeffs = [float(c) for c in match.group(1).split(",") if c.strip() != ""]
        if not coeffs:
            raise ValueError(f"empty polynomial factor in {text!r}")
        if any(c < 0 for c in coeffs):
            raise ValueError("polynomial factors need nonnegative coefficients to stay PD")
        fn = lambda t, _c=np.array(coeffs): npoly.polyval(clamp_unit(t), _c)
        return fn, False, "poly(" + ",".join(_fmt(c) for c in coeffs) + ")"
    match = re.fullmatch(r"exp\(([^()]*)\)", text)
    if match:
        rate = float(match.group(1))
        if rate <= 0:
            raise ValueError("exponential factor rate must be positive")
        fn = lambda t, _a=rate: np.exp(-_a * np.arccos(clamp_unit(t)))
        return fn, True, f"exp({_fmt(rate)})"
    raise ValueError(f"unknown univariate factor {text!r} (expected poly(...) or exp(...))")


def kernel_from_label(label: str) -> IsotropicKernel:
    """Build a kernel from a registry label.

    Grammar::

        const:c=<real>
        cm_exp:a=<pos real>,b=<pos real>
        cm_pow:alpha=<nonneg real>,beta=<nonneg real>
        prod:f=<factor>,g=<factor>      factor := poly(c0,c1,...) | exp(a)
    """
    name, sep, params = label.partition(":")
    if not sep:
        raise ValueError(f"kernel label {label!r} missing ':'")
    try:
        if name == "const":
            match = re.fullmatch(r"c=([^,]+)", params)
            if not match:
                raise ValueError("const takes a single parameter c=<real>")
            return constant_kernel(float(match.group(1)))
        if name == "cm_exp":
            match = re.fullmatch(r"a=([^,]+),b=([^,]+)", params)
            if not match:
                raise ValueError("cm_exp takes parameters a=<real>,b=<real>")
            return cm_exponential(float(match.group(1)), float(match.group(2)))
        if name == "cm_pow":
            match = re.fullmatch(r"alpha=([^,]+),beta=([^,]+)", params)
            if not match:
                raise ValueError("cm_pow takes parameters alpha=<real>,beta=<real>")
            return cm_inverse_power(float(match.group(1)), float(match.group(2)))
        if name == "prod":
            match = re.fullmatch(r"f=(.+),g=(.+)", params)
            if not match:
                raise ValueError("prod takes parameters f=<factor>,g=<factor>")
            f1, f_strict, f_txt = _parse_factor(match.group(1))
            g1, g_strict, g_txt = _parse_factor(match.group(2))
            return product_kernel(f1, g1, f_strict, g_strict, label=f"prod:f={f_txt},g={g_txt}")
    except ValueError as exc:
        raise ValueError(f"bad kernel label {label!r}: {exc}") from exc
    raise ValueError(f"unknown kernel family {name!r} in label {label!r}")


def standard_test_kernels() -> list[IsotropicKernel]:
    """The in-house zoo of PD kernels exercised by the oracle suites."""
    half = kernel_from_label("prod:f=poly(0.5,0.5),g=poly(0.5,0.5)")
    linear = kernel_from_label("prod:f=poly(0,1),g=poly(1)")
    return [
        constant_kernel(1.0),
        half,
        linear,
        cm_exponential(1.0, 1.0),
        cm_inverse_power(1.0, 0.5),
        combine([cm_exponential(1.0, 1.0), constant_kernel(1.0)], SUM, [0.5, 0.5]),
        combine([cm_exponential(0.5, 0.5), cm_inverse_power(0.5, 0.5)], PRODUCT),
    ]
