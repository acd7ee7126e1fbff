"""Heat trace and heat kernel by summation over irreducible representations.

The Laplacian eigenvalue on the isotypic block of highest weight ``lam`` is
``-c(lam)`` with multiplicity ``dim(lam)**2``.  Sums are truncated at a
Casimir cutoff chosen by doubling until an analytic tail bound falls below
the requested tolerance, and accumulated in ascending-eigenvalue order with
Neumaier compensation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaincc, gammaln

from . import _backend
from .errors import LieHeatError, WeylSingularError
from .geometry import scalar_curvature
from .liealg import GroupSpec, StructuredLieAlgebra, build_algebra
from .rootsys import RootSystem, dominant_weights, root_system, weyl_denominator

_MAX_DOUBLINGS = 40


@dataclass(frozen=True, eq=False)
class WeightTable:
    """Dominant weights up to a cutoff, as contiguous arrays for the kernels."""

    cutoff: float
    weights: np.ndarray  # (m, r)
    shifted: np.ndarray  # weights + rho
    dims: np.ndarray
    casimir: np.ndarray

    @property
    def dims_squared(self) -> np.ndarray:
        return self.dims * self.dims


@dataclass(frozen=True, eq=False)
class SpectralModel:
    spec: GroupSpec
    alg: StructuredLieAlgebra
    rs: RootSystem
    scalar_curvature: float

    @property
    def dim(self) -> int:
        return self.alg.n

    def table(self, cutoff: float) -> WeightTable:
        return _weight_table(self.spec, float(cutoff))

    def tail_bound(self, cutoff: float, t: float) -> float:
        """Upper bound on ``sum_{c > cutoff} dim^2 exp(-t c)``."""
        if self.rs.abelian:
            return _torus_tail(self.alg, cutoff, t)
        return _weyl_tail(self.rs, cutoff, t)


@lru_cache(maxsize=None)
def spectral_model(spec: GroupSpec) -> SpectralModel:
    alg = build_algebra(spec)
    rs = root_system(alg)
    return SpectralModel(spec=spec, alg=alg, rs=rs, scalar_curvature=scalar_curvature(alg).value)


@lru_cache(maxsize=64)
def _weight_table(spec: GroupSpec, cutoff: float) -> WeightTable:
    model = spectral_model(spec)
    data = dominant_weights(model.rs, model.alg, cutoff)
    r = model.rs.rank
    weights = np.array([d.weight for d in data], dtype=float).reshape(-1, r)
    return WeightTable(
        cutoff=cutoff,
        weights=np.ascontiguousarray(weights),
        shifted=np.ascontiguousarray(weights + model.rs.rho),
        dims=np.array([d.dim for d in data], dtype=float),
        casimir=np.array([d.casimir for d in data], dtype=float),
    )


def _torus_tail(alg: StructuredLieAlgebra, cutoff: float, t: float) -> float:
    # sum over k in Z^r with |k|^2 / s > cutoff of exp(-a |k|^2), a = t / s
    r = alg.n
    s = alg.spec.metric_scale
    a = t / s
    radius = math.sqrt(max(cutoff, 0.0) * s)
    k0 = math.floor(radius / math.sqrt(r)) + 1
    one_dim = 2.0 * math.exp(-a * k0 * k0) / -math.expm1(-2.0 * a * k0)
    theta = 1.0 + 2.0 * math.exp(-a) / -math.expm1(-2.0 * a)
    return r * theta ** (r - 1) * one_dim


def _weyl_tail(rs: RootSystem, cutoff: float, t: float) -> float:
    r = rs.rank
    npos = len(rs.positive_roots)
    gram = rs.fundamental_weights @ rs.fundamental_weights.T
    eig = np.linalg.eigvalsh(gram)
    kmin, kmax = float(eig[0]), float(eig[-1])
    rho2 = rs.rho_norm2
    # dim <= P * |lam + rho|^npos
    log_p = float(sum(math.log(np.linalg.norm(a) / (rs.rho @ a)) for a in rs.positive_roots))
    y0 = cutoff + rho2
    if y0 < npos / t:
        return math.inf  # y^npos e^{-ty} not yet decreasing on the tail
    u0 = math.sqrt(y0 / kmax)
    lo = max(0.0, u0 - math.sqrt(r))
    hi = max(lo, math.sqrt(y0 / kmin))
    log_sphere = math.log(2.0) + 0.5 * r * math.log(math.pi) - gammaln(0.5 * r) - r * math.log(2.0)
    # constant part of the majorant on [lo, hi]
    log_c0 = 2 * log_p + t * rho2 + npos * math.log(y0) - t * y0
    flat = math.exp(log_sphere + log_c0) * (hi ** r - lo ** r) / r
    p = 2 * npos + r
    b = t * kmin
    log_gauss = (
        log_sphere + 2 * log_p + t * rho2 + npos * math.log(kmin)
        + gammaln(0.5 * p) - math.log(2.0) - 0.5 * p * math.log(b)
    )
    return flat + math.exp(log_gauss + _log_gammaincc(0.5 * p, b * hi * hi))


def _log_gammaincc(a: float, x: float) -> float:
    """log of the regularised upper incomplete gamma, safe against underflow."""
    q = gammaincc(a, x)
    if q > 1e-280:
        return math.log(q)
    # Gamma(a, x) <= 2 x^{a-1} e^{-x} once x >= 2(a-1)
    return math.log(2.0) + (a - 1.0) * math.log(x) - x - gammaln(a)


def _check_t(t: float, tail_eps: float):
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if not tail_eps > 0:
        raise ValueError(f"tail_eps must be positive, got {tail_eps}")


def choose_cutoff(model: SpectralModel, t: float, tail_eps: float) -> tuple:
    """Smallest doubled cutoff whose tail bound is below ``tail_eps``; returns ``(cutoff, bound)``."""
    _check_t(t, tail_eps)
    cutoff = max(8.0, 4.0 * model.dim / t)
    for _ in range(_MAX_DOUBLINGS):
        bound = model.tail_bound(cutoff, t)
        if bound < tail_eps:
            return cutoff, bound
        cutoff *= 2.0
    raise LieHeatError(f"tail bound did not reach {tail_eps} (t={t})")


@dataclass(frozen=True)
class TraceValue:
    value: float
    tail_bound: float
    cutoff: float


def heat_trace(spec: GroupSpec, t: float, tail_eps: float = 1e-12) -> TraceValue:
    """``Z(t) = sum_lam dim(lam)^2 exp(-t c(lam))`` with a rigorous truncation bound."""
    model = spectral_model(spec)
    cutoff, bound = choose_cutoff(model, t, tail_eps)
    tab = model.table(cutoff)
    z = _backend.exp_weighted_sum(tab.dims_squared, tab.casimir, float(t))
    return TraceValue(z, bound, cutoff)


def vhat_prefactor(model: SpectralModel, t: float) -> float:
    return (4.0 * math.pi * t) ** (0.5 * model.dim) * math.exp(-t * model.scalar_curvature / 6.0)


def vhat(spec: GroupSpec, t: float, tail_eps: float = 1e-12) -> float:
    """Normalised trace ``(4 pi t)^{n/2} exp(-t S / 6) Z(t)``."""
    model = spectral_model(spec)
    return vhat_prefactor(model, t) * heat_trace(spec, t, tail_eps).value


@dataclass(frozen=True)
class TraceCurve:
    t_values: tuple
    Z: tuple
    vhat: tuple
    tail_bound: tuple
    cutoff_used: float


def trace_curve(spec: GroupSpec, t_values, tail_eps: float = 1e-12) -> TraceCurve:
    ts = tuple(float(t) for t in t_values)
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_values must be strictly increasing")
    model = spectral_model(spec)
    zs, vs, bs, cut = [], [], [], 0.0
    for t in ts:
        tv = heat_trace(spec, t, tail_eps)
        zs.append(tv.value)
        vs.append(vhat_prefactor(model, t) * tv.value)
        bs.append(tv.tail_bound)
        cut = max(cut, tv.cutoff)
    return TraceCurve(ts, tuple(zs), tuple(vs), tuple(bs), cut)


def eigenvalue_list(spec: GroupSpec, cutoff: float) -> list:
    """``(c, multiplicity)`` pairs with ``c <= cutoff``, equal eigenvalues merged."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    model = spectral_model(spec)
    out = []
    for d in dominant_weights(model.rs, model.alg, cutoff):
        if out and abs(out[-1][0] - d.casimir) <= 1e-9 * max(1.0, d.casimir):
            out[-1] = (out[-1][0], out[-1][1] + d.dim * d.dim)
        else:
            out.append((d.casimir, d.dim * d.dim))
    return out


def _cartan_args(model: SpectralModel, h):
    h = np.asarray(h, dtype=float).reshape(-1)
    if h.shape[0] != model.rs.rank:
        raise ValueError(f"expected {model.rs.rank} Cartan coordinates, got {h.shape[0]}")
    den = weyl_denominator(model.rs, h) if not model.rs.abelian else 1.0 + 0j
    if abs(den) <= 1e-10:
        raise WeylSingularError(
            f"Weyl denominator {abs(den):.3g} at H={h.tolist()} is singular; perturb H off the walls"
        )
    hw = np.ascontiguousarray(np.array([w.T @ h for w in model.rs.weyl_group]))
    return hw, den


def kernel_sum(model: SpectralModel, h, t: float, table: WeightTable, eigenvalue_shift: float = 0.0) -> float:
    """Unnormalised kernel ``sum_lam dim * chi_lam(exp H) * exp(-t (c + shift))``."""
    hw, den = _cartan_args(model, h)
    cas = table.casimir + eigenvalue_shift if eigenvalue_shift else table.casimir
    return _backend.character_sum(
        table.shifted, table.dims, cas, hw, model.rs.weyl_signs, den.real, den.imag, float(t)
    )


@dataclass(frozen=True)
class KernelRatio:
    ratio: float
    tail_bound: float
    cutoff: float


def spectral_kernel_ratio(
    spec: GroupSpec, h, t: float, tail_eps: float = 1e-12, eigenvalue_shift: float = 0.0
) -> KernelRatio:
    """``k_t(exp H) / k_t(e)`` from the character expansion; the volume cancels.

    A nonzero ``eigenvalue_shift`` evaluates the same ratio for the semigroup
    with every eigenvalue moved by that amount.
    """
    model = spectral_model(spec)
    cutoff, bound = choose_cutoff(model, t, tail_eps)
    tab = model.table(cutoff)
    num = kernel_sum(model, h, t, tab, eigenvalue_shift)
    cas = tab.casimir + eigenvalue_shift if eigenvalue_shift else tab.casimir
    den = _backend.exp_weighted_sum(tab.dims_squared, cas, float(t))
    ratio = num / den
    if eigenvalue_shift:
        bound *= math.exp(-t * eigenvalue_shift)
    return KernelRatio(ratio, (bound + abs(ratio) * bound) / den, cutoff)
