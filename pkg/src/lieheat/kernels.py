"""Gaussian and closed-form asymptotic heat kernels, and their spectral checks.

All spectral-versus-asymptotic comparisons are ratios normalised at the
identity, so the volume of the group never enters.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import mpmath
import numpy as np

from .geometry import DEFAULT_STEP, laplace_beltrami_chart
from .liealg import GroupSpec, cartan_representative, check_chart_domain, j_function
from .spectrum import choose_cutoff, kernel_sum, spectral_kernel_ratio, spectral_model

# mpmath keeps its working precision in one process-wide context
_MP_LOCK = threading.Lock()


@dataclass(frozen=True)
class KernelComparison:
    X: tuple
    t: float
    spectral_ratio: float
    asymptotic_ratio: float
    rel_diff: float
    tail_bound: float


def gaussian_kernel(X, t: float, n: int) -> float:
    """Euclidean heat kernel ``exp(-|X|^2 / 4t) / (4 pi t)^{n/2}``."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    X = np.asarray(X, dtype=float).reshape(-1)
    return math.exp(-float(X @ X) / (4.0 * t)) / (4.0 * math.pi * t) ** (0.5 * n)


def asymptotic_kernel(spec: GroupSpec, X, t: float) -> float:
    """``h_t(X) / j(X) * exp(t S / 6)`` on the exponential chart."""
    model = spectral_model(spec)
    X = np.asarray(X, dtype=float)
    return gaussian_kernel(X, t, model.dim) / j_function(model.alg, X) * math.exp(t * model.scalar_curvature / 6.0)


def asymptotic_ratio(spec: GroupSpec, X, t: float) -> float:
    """``[h_t(X) / h_t(0)] / j(X)``; the curvature factor cancels."""
    model = spectral_model(spec)
    X = np.asarray(X, dtype=float)
    return math.exp(-float(X @ X) / (4.0 * t)) / j_function(model.alg, X)


def kernel_compare(spec: GroupSpec, h, t: float, tail_eps: float = 1e-12, eigenvalue_shift: float = 0.0) -> KernelComparison:
    """Spectral kernel ratio against the closed-form asymptotic ratio at the Cartan point ``h``."""
    model = spectral_model(spec)
    X = model.alg.embed_cartan(h)
    check_chart_domain(model.alg, X)
    spec_r = spectral_kernel_ratio(spec, h, t, tail_eps, eigenvalue_shift)
    asym = asymptotic_ratio(spec, X, t)
    return KernelComparison(
        X=tuple(X.tolist()),
        t=float(t),
        spectral_ratio=spec_r.ratio,
        asymptotic_ratio=asym,
        rel_diff=abs(spec_r.ratio - asym) / abs(asym),
        tail_bound=spec_r.tail_bound,
    )


def kernel_compare_mp(spec: GroupSpec, h, t: float, dps: int = 250) -> KernelComparison:
    """``kernel_compare`` evaluated with ``dps`` significant digits.

    In double precision the two ratios agree to rounding, which hides how the
    discrepancy shrinks with ``t``.  Root data are rebuilt from the integer
    Cartan matrix and integer Weyl-group matrices on weight coordinates, so
    the lattice geometry is exact at the working precision; only the simple
    root lengths and the point ``H`` carry double-precision input.
    """
    model = spectral_model(spec)
    rs = model.rs
    X = model.alg.embed_cartan(h)
    check_chart_domain(model.alg, X)
    cutoff, _ = choose_cutoff(model, t, 10.0 ** (-dps))
    tab = model.table(cutoff)
    hv = np.asarray(h, dtype=float).reshape(-1)
    with _MP_LOCK, mpmath.workdps(dps + 10):
        T = mpmath.mpf(t)
        if rs.abelian:
            spectral, asym = _torus_ratio_mp(model, tab, hv, T)
        else:
            spectral, asym = _weyl_ratio_mp(model, tab, hv, T)
        rel = abs(spectral - asym) / abs(asym)
        return KernelComparison(
            X=tuple(X.tolist()),
            t=float(t),
            spectral_ratio=float(spectral),
            asymptotic_ratio=float(asym),
            rel_diff=float(rel),
            tail_bound=10.0 ** (-dps),
        )


def _torus_ratio_mp(model, tab, hv, T):
    # the torus kernel factorises over coordinates
    unit = 1 / mpmath.sqrt(mpmath.mpf(model.spec.metric_scale))
    kmax = int(np.abs(np.rint(tab.weights / model.alg.lattice_basis.diagonal())).max())
    spectral = mpmath.mpf(1)
    r2 = mpmath.mpf(0)
    for x in hv:
        x = mpmath.mpf(float(x))
        num = mpmath.mpf(1)
        den = mpmath.mpf(1)
        for k in range(1, kmax + 1):
            e = mpmath.exp(-T * (unit * k) ** 2)
            num += 2 * mpmath.cos(unit * k * x) * e
            den += 2 * e
        spectral *= num / den
        r2 += x * x
    return spectral, mpmath.exp(-r2 / (4 * T))


def _symmetrised_lengths(cartan, lengths2) -> list:
    """Simple-root squared lengths with ratios fixed exactly by the Cartan matrix."""
    r = len(lengths2)
    L = [None] * r
    L[0] = mpmath.mpf(float(lengths2[0]))
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(r):
            if L[j] is None and cartan[i][j] != 0:
                # A_ij L_j = A_ji L_i
                L[j] = L[i] * int(cartan[j][i]) / int(cartan[i][j])
                stack.append(j)
    return L


def _weyl_ratio_mp(model, tab, hv, T):
    rs = model.rs
    r = rs.rank
    simple = rs.simple_roots
    lengths2 = np.sum(simple * simple, axis=1)
    coroots = 2.0 * simple / lengths2[:, None]
    cartan = np.rint(simple @ coroots.T).astype(int)  # A_ij = <alpha_i, coroot_j>
    omega = rs.fundamental_weights
    # w acting on fundamental-weight coordinates
    weyl_int = [np.rint(coroots @ w @ omega.T).astype(int) for w in rs.weyl_group]
    signs = [int(round(np.linalg.det(m))) for m in weyl_int]
    pos_coeffs = np.rint(np.linalg.solve(simple.T, rs.positive_roots.T).T).astype(int)
    coords = np.rint(tab.weights @ coroots.T).astype(int)

    A = mpmath.matrix(cartan.tolist())
    L = _symmetrised_lengths(cartan, lengths2)
    B = mpmath.matrix(r, r)
    for i in range(r):
        for j in range(r):
            B[i, j] = A[i, j] * L[j] / 2
    B = (B + B.T) / 2
    Ainv = A ** -1
    gram_w = Ainv * B * Ainv.T  # Gram matrix of fundamental weights
    phi = [mpmath.mpf(float(omega[i] @ hv)) for i in range(r)]  # <omega_i, H>

    def pairing(vec):
        return mpmath.fsum(int(vec[i]) * phi[i] for i in range(r))

    base = [mpmath.expj(p) for p in phi]
    powers = {}

    def expj_int(vec):
        out = mpmath.mpc(1)
        for i in range(r):
            key = (i, int(vec[i]))
            if key not in powers:
                powers[key] = base[i] ** key[1]
            out *= powers[key]
        return out

    def alternating(mu):
        return mpmath.fsum(sgn * expj_int(m @ mu) for sgn, m in zip(signs, weyl_int))

    ones = np.ones(r, dtype=int)
    den = alternating(ones)

    def norm2(vec):
        return mpmath.fsum(int(vec[i]) * int(vec[j]) * gram_w[i, j] for i in range(r) for j in range(r))

    rho2 = norm2(ones)
    num = mpmath.mpf(0)
    tr = mpmath.mpf(0)
    for m in coords:
        shifted = m + ones
        e = mpmath.exp(-T * (norm2(shifted) - rho2))
        # Weyl dimension formula, exact in the lattice coordinates
        dim = mpmath.mpf(1)
        for k in pos_coeffs:
            top = mpmath.fsum(int(k[j]) * L[j] / 2 * int(shifted[j]) for j in range(r))
            bot = mpmath.fsum(int(k[j]) * L[j] / 2 for j in range(r))
            dim *= top / bot
        chi = mpmath.re(alternating(shifted) / den)
        num += dim * chi * e
        tr += dim * dim * e
    # j on the torus: prod over positive roots of sin(a/2)/(a/2), a = <alpha, H>
    j = mpmath.mpf(1)
    for k in pos_coeffs:
        a = mpmath.fsum(int(k[i]) * pairing(cartan[i]) for i in range(r))
        j *= mpmath.sin(a / 2) / (a / 2)
    h2 = mpmath.fsum(phi[i] * phi[j2] * (gram_w ** -1)[i, j2] for i in range(r) for j2 in range(r))
    return num / tr, mpmath.exp(-h2 / (4 * T)) / j


def heat_equation_residual(
    spec: GroupSpec,
    h,
    t: float,
    tail_eps: float = 1e-12,
    dt: float | None = None,
    step: float = DEFAULT_STEP,
    time_order: int = 2,
) -> tuple:
    """``(d_t - Lap_G) u`` at ``exp(H)`` for the unnormalised spectral kernel ``u``.

    Returns ``(residual, d_t u)``; the time derivative is a central
    difference (second order unless ``time_order=4``) and the Laplacian is the chart finite-difference operator.
    """
    model = spectral_model(spec)
    dt = t / 100.0 if dt is None else dt
    if not 0 < dt < t:
        raise ValueError("need 0 < dt < t")
    cutoff, _ = choose_cutoff(model, t - (time_order // 2) * dt, tail_eps)
    tab = model.table(cutoff)
    X0 = model.alg.embed_cartan(h)

    def u_at(tau):
        return kernel_sum(model, h, tau, tab)

    if time_order == 2:
        dudt = (u_at(t + dt) - u_at(t - dt)) / (2.0 * dt)
    elif time_order == 4:
        if not 2 * dt < t:
            raise ValueError("fourth-order stencil needs 2*dt < t")
        dudt = (-u_at(t + 2 * dt) + 8 * u_at(t + dt) - 8 * u_at(t - dt) + u_at(t - 2 * dt)) / (12.0 * dt)
    else:
        raise ValueError("time_order must be 2 or 4")

    def u_field(x):
        return kernel_sum(model, cartan_representative(model.alg, x), t, tab)

    lap = laplace_beltrami_chart(model.alg, u_field, X0, step)
    return dudt - lap, dudt


def torus_exact_kernel(rank: int, circumferences, X, t: float, form: str = "wrapped") -> float:
    """Heat kernel of a flat torus with the given circumferences (normalised: integrates to 1).

    ``form="wrapped"`` sums translated gaussians; ``form="character"`` sums
    ``exp(-t |k|^2) cos(k.x) / vol`` over the dual lattice.  Both truncate
    once the remaining terms are below 1e-17 relative.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    L = np.broadcast_to(np.asarray(circumferences, dtype=float), (rank,))
    X = np.asarray(X, dtype=float).reshape(rank)
    out = 1.0
    for x, length in zip(X, L):
        out *= _circle_kernel(float(x), float(length), t, form)
    return out


def _circle_kernel(x: float, length: float, t: float, form: str) -> float:
    if form == "wrapped":
        x = math.remainder(x, length)
        width = math.sqrt(4.0 * t)
        kmax = int(math.ceil((9.0 * width + abs(x)) / length)) + 1
        terms = [math.exp(-((x + k * length) ** 2) / (4.0 * t)) for k in range(-kmax, kmax + 1)]
        return math.fsum(terms) / math.sqrt(4.0 * math.pi * t)
    if form == "character":
        freq = 2.0 * math.pi / length
        kmax = int(math.ceil(math.sqrt(40.0 / t) / freq)) + 1
        terms = [math.exp(-t * (k * freq) ** 2) * math.cos(k * freq * x) for k in range(-kmax, kmax + 1)]
        return math.fsum(terms) / length
    raise ValueError(f"unknown form {form!r}")
