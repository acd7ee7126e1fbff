"""Exponential-chart geometry of a bi-invariant metric.

The pulled-back metric at ``X`` is ``A(X)^T A(X)`` where ``A`` is the
left-trivialised differential of ``exp``.  The Laplace-Beltrami operator is
discretised in flux (divergence) form with second-order central differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import InternalConsistencyError
from .liealg import (
    StructuredLieAlgebra,
    ad_matrix,
    bracket,
    casimir_trace,
    check_chart_domain,
    j_function,
)
from .rootsys import RootSystem

DEFAULT_STEP = 1e-3

ScalarField = Callable[[np.ndarray], float]


@dataclass(frozen=True, eq=False)
class ChartSample:
    X: np.ndarray
    g: np.ndarray
    det_g: float
    g_inv: np.ndarray


class ScalarCurvature(NamedTuple):
    """Scalar curvature by the curvature-tensor sum and by the Casimir trace."""

    value: float
    from_casimir: float


def dexp_factor(alg: StructuredLieAlgebra, X) -> np.ndarray:
    """``sum_k (-ad_X)^k / (k+1)!``, truncated once a term drops below 1e-16."""
    neg_ad = -ad_matrix(alg, X)
    out = np.eye(alg.n)
    term = np.eye(alg.n)
    k = 0
    while True:
        k += 1
        term = term @ neg_ad / (k + 1)
        if np.max(np.abs(term)) < 1e-16:
            break
        out = out + term
        if k > 500:
            raise InternalConsistencyError("dexp series failed to converge")
    return out


def chart_metric(alg: StructuredLieAlgebra, X) -> ChartSample:
    X = np.asarray(X, dtype=float)
    check_chart_domain(alg, X)
    a = dexp_factor(alg, X)
    g = a.T @ a
    det = float(np.linalg.det(g))
    if not det > 0:
        raise InternalConsistencyError(f"singular chart metric at X={X.tolist()}")
    return ChartSample(X=X, g=g, det_g=det, g_inv=np.linalg.inv(g))


def _flux_laplacian(f: ScalarField, X: np.ndarray, h: float, weight) -> float:
    """``w(X)^{-1} sum_i d_i(F_i)`` with ``F = w * M * grad f``; ``weight(Y)`` returns ``(w, M)``."""
    n = X.shape[0]
    eye = np.eye(n)
    half = 0.5 * h
    total = 0.0
    for i in range(n):
        flux = []
        for sgn in (1.0, -1.0):
            y = X + sgn * half * eye[i]
            w, m = weight(y)
            grad = np.array([(f(y + half * eye[j]) - f(y - half * eye[j])) / h for j in range(n)])
            flux.append(w * float(m[i] @ grad))
        total += (flux[0] - flux[1]) / h
    w0, _ = weight(X)
    return total / w0


def laplace_beltrami_chart(alg: StructuredLieAlgebra, f: ScalarField, X, h: float = DEFAULT_STEP) -> float:
    """Laplace-Beltrami operator of the bi-invariant metric applied to ``f`` at ``X``."""
    X = np.asarray(X, dtype=float)
    eye = np.eye(alg.n)
    for i in range(alg.n):
        for sgn in (1.0, -1.0):
            check_chart_domain(alg, X + sgn * 2.0 * h * eye[i])

    def weight(y):
        sample = chart_metric(alg, y)
        return math.sqrt(sample.det_g), sample.g_inv

    return _flux_laplacian(f, X, h, weight)


def flat_laplacian(f: ScalarField, X, h: float = DEFAULT_STEP) -> float:
    """Constant-coefficient Laplacian on the Lie algebra, same stencil as the curved one."""
    X = np.asarray(X, dtype=float)
    ident = np.eye(X.shape[0])
    return _flux_laplacian(f, X, h, lambda y: (1.0, ident))


def riemann(alg: StructuredLieAlgebra, X, Y, Z, W) -> float:
    return -0.25 * float(bracket(alg, X, Y) @ bracket(alg, Z, W))


def scalar_curvature(alg: StructuredLieAlgebra) -> ScalarCurvature:
    eye = np.eye(alg.n)
    total = 0.0
    for i in range(alg.n):
        for j in range(alg.n):
            total += riemann(alg, eye[i], eye[j], eye[j], eye[i])
    other = -0.25 * casimir_trace(alg)
    if abs(total - other) > 1e-10 * max(1.0, abs(other)):
        raise InternalConsistencyError(
            f"curvature-tensor scalar curvature {total!r} disagrees with -tr(Cas)/4 = {other!r}"
        )
    return ScalarCurvature(total, other)


def chart_identity_residual(
    alg: StructuredLieAlgebra, rs: RootSystem, f: ScalarField, X, h: float = DEFAULT_STEP
) -> float:
    """``Lap_G f - <rho,rho> f - j^{-1} Lap_flat(j f)`` at ``X`` in the exponential chart."""
    X = np.asarray(X, dtype=float)
    lap_g = laplace_beltrami_chart(alg, f, X, h)

    def jf(y):
        return j_function(alg, y) * f(y)

    conj = flat_laplacian(jf, X, h) / j_function(alg, X)
    return lap_g - rs.rho_norm2 * f(X) - conj


def metric_first_derivatives(alg: StructuredLieAlgebra, X=None, h: float = DEFAULT_STEP) -> np.ndarray:
    """Central-difference ``d_k g_ij`` at ``X`` (default the origin), shape (n, n, n)."""
    X = np.zeros(alg.n) if X is None else np.asarray(X, dtype=float)
    eye = np.eye(alg.n)
    return np.array(
        [(chart_metric(alg, X + h * eye[k]).g - chart_metric(alg, X - h * eye[k]).g) / (2 * h) for k in range(alg.n)]
    )


def chart_test_fields(alg: StructuredLieAlgebra) -> list:
    """Ad-invariant gaussian-times-polynomial fields for the chart checks.

    The conjugation identity relates two operators with different principal
    symbols away from 0, so it only holds on conjugation-invariant functions.
    """

    def quartic(x):
        ad = ad_matrix(alg, x)
        return float(np.trace(ad @ ad @ ad @ ad))

    def gauss(x):
        return math.exp(-float(x @ x))

    def radial(x):
        r2 = float(x @ x)
        return r2 * math.exp(-r2)

    def quartic_gauss(x):
        return (1.0 + 0.25 * quartic(x)) * math.exp(-0.5 * float(x @ x))

    return [("gaussian", gauss), ("radial_gaussian", radial), ("quartic_gaussian", quartic_gauss)]
