from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieheat import WeylSingularError, parse_group_spec
from lieheat.spectrum import (
    choose_cutoff,
    eigenvalue_list,
    heat_trace,
    spectral_kernel_ratio,
    spectral_model,
    trace_curve,
    vhat,
)

SU2_VOLUME = 4 * math.sqrt(2) * math.pi ** 2
SO3_VOLUME = 16 * math.sqrt(2) * math.pi ** 2
SU3_VOLUME = math.sqrt(3) * (2 * math.pi) ** 5 / 2


def su2_trace_oracle(t, scale=1.0):
    # m = dimension, c = (m^2 - 1) / 2s
    return math.fsum(m * m * math.exp(-t * (m * m - 1) / (2 * scale)) for m in range(1, 400))


def so3_trace_oracle(t):
    # odd dimensions only, c = (m^2 - 1) / 8
    return math.fsum(m * m * math.exp(-t * (m * m - 1) / 8) for m in range(1, 2000, 2))


def su3_trace_oracle(t):
    terms = []
    for a in range(120):
        for b in range(120):
            c = 2 * (a * a + a * b + b * b + 3 * a + 3 * b) / 3
            d = (a + 1) * (b + 1) * (a + b + 2) / 2
            terms.append(d * d * math.exp(-t * c))
    return math.fsum(terms)


def spec(label, scale=1.0):
    return parse_group_spec(label, scale)


def test_su2_trace_direct_sum():
    z = heat_trace(spec("su2"), 0.2).value
    assert z == pytest.approx(su2_trace_oracle(0.2), rel=1e-14)


def test_so3_trace_direct_sum():
    for t in (0.05, 0.2, 1.0):
        assert heat_trace(spec("so3"), t).value == pytest.approx(so3_trace_oracle(t), rel=1e-13)


def test_su3_trace_closed_form():
    for t in (0.1, 0.5):
        assert heat_trace(spec("su3"), t).value == pytest.approx(su3_trace_oracle(t), rel=1e-13)


@pytest.mark.parametrize("t", [0.05, 0.3, 1.0, 4.0])
def test_torus_trace_is_theta_function(t):
    oracle = float(mpmath.jtheta(3, 0, mpmath.exp(-t)))
    assert heat_trace(spec("torus:1"), t).value == pytest.approx(oracle, rel=1e-14)
    assert heat_trace(spec("torus:2"), t).value == pytest.approx(oracle ** 2, rel=1e-13)


def test_torus_trace_at_one():
    assert heat_trace(spec("torus:1"), 1.0).value == pytest.approx(1.7726372048266521, rel=1e-14)


@pytest.mark.parametrize("label", ["torus:1", "su2", "so3", "su3"])
def test_trace_tends_to_one(label):
    assert heat_trace(spec(label), 200.0).value == pytest.approx(1.0, abs=1e-12)


def test_vhat_su2_volume():
    assert vhat(spec("su2"), 0.1) == pytest.approx(SU2_VOLUME, rel=1e-12)


def test_vhat_so3_volume():
    assert vhat(spec("so3"), 0.1) == pytest.approx(SO3_VOLUME, rel=1e-12)


def test_vhat_su3_volume():
    assert vhat(spec("su3"), 0.05) == pytest.approx(SU3_VOLUME, rel=1e-10)


@pytest.mark.parametrize("t", [0.01, 0.05, 0.2])
def test_vhat_circle(t):
    assert abs(vhat(spec("torus:1"), t) - 2 * math.pi) < 1e-12


def test_vhat_circle_large_t_sees_poisson_correction():
    # sqrt(4 pi t) theta(t) = 2 pi theta(pi^2 / t)
    t = 1.0
    dual = float(mpmath.jtheta(3, 0, mpmath.exp(-math.pi ** 2 / t)))
    assert vhat(spec("torus:1"), t) == pytest.approx(2 * math.pi * dual, rel=1e-14)


@pytest.mark.parametrize("label", ["su2", "so3", "su3"])
def test_vhat_flatness(label):
    curve = trace_curve(spec(label), [0.05, 0.0875, 0.125, 0.1625, 0.2])
    assert max(abs(v / curve.vhat[0] - 1) for v in curve.vhat) < 1e-6
    assert all(b < 1e-12 for b in curve.tail_bound)


@pytest.mark.parametrize("label", ["torus:1", "torus:2", "su2", "so3", "su3"])
@pytest.mark.parametrize("scale", [0.5, 2.0])
def test_scale_covariance(label, scale):
    n = spectral_model(spec(label)).dim
    for t in (0.07, 0.15):
        z1 = heat_trace(spec(label), t / scale).value
        zs = heat_trace(spec(label, scale), t).value
        assert zs == pytest.approx(z1, rel=1e-9)
        assert vhat(spec(label, scale), t) == pytest.approx(scale ** (n / 2) * vhat(spec(label), t / scale), rel=1e-9)


@pytest.mark.parametrize("label", ["torus:1", "torus:2", "su2", "so3", "su3"])
@pytest.mark.parametrize("t", [0.05, 0.3])
def test_tail_bound_covers_doubled_cutoff(label, t):
    model = spectral_model(spec(label))
    cutoff, bound = choose_cutoff(model, t, 1e-12)
    small = model.table(cutoff)
    big = model.table(2 * cutoff)
    z_small = math.fsum(small.dims_squared * np.exp(-t * small.casimir))
    z_big = math.fsum(big.dims_squared * np.exp(-t * big.casimir))
    assert 0 <= z_big - z_small <= bound + 1e-15 * z_big


@pytest.mark.parametrize("label", ["torus:1", "torus:2", "su2", "so3", "su3"])
def test_tail_bound_dominates_true_tail(label):
    model = spectral_model(spec(label))
    t = 0.4
    ref = model.table(400.0)
    for cutoff in (20.0, 40.0, 80.0):
        mask = ref.casimir > cutoff
        tail = math.fsum(ref.dims_squared[mask] * np.exp(-t * ref.casimir[mask]))
        assert model.tail_bound(cutoff, t) >= tail


def test_eigenvalue_lists():
    assert [(round(c, 12), m) for c, m in eigenvalue_list(spec("su2"), 4.0)] == [(0, 1), (1.5, 4), (4, 9)]
    assert [(round(c, 12), m) for c, m in eigenvalue_list(spec("torus:1"), 1.0)] == [(0, 1), (1, 2)]
    assert [(round(c, 12), m) for c, m in eigenvalue_list(spec("so3"), 1.0)] == [(0, 1), (1, 9)]
    # conjugate representations of SU(3) share an eigenvalue
    su3 = eigenvalue_list(spec("su3"), 3.0)
    assert su3[1][0] == pytest.approx(8 / 3) and su3[1][1] == 18


def test_bad_arguments():
    with pytest.raises(ValueError):
        heat_trace(spec("su2"), 0.0)
    with pytest.raises(ValueError):
        heat_trace(spec("su2"), 0.1, tail_eps=0.0)
    with pytest.raises(ValueError):
        trace_curve(spec("su2"), [0.2, 0.1])
    with pytest.raises(ValueError):
        eigenvalue_list(spec("su2"), -1.0)


def test_trace_is_deterministic():
    a = [heat_trace(spec("su3"), t).value for t in (0.05, 0.1)]
    b = [heat_trace(spec("su3"), t).value for t in (0.05, 0.1)]
    assert a == b


# -- kernel ratio ------------------------------------------------------------


@pytest.mark.parametrize("label,h", [("su2", [1e-3]), ("so3", [1e-3]), ("su3", [8e-4, 6e-4]), ("torus:2", [6e-4, 8e-4])])
def test_ratio_tends_to_one(label, h):
    assert spectral_kernel_ratio(spec(label), h, 0.05).ratio == pytest.approx(1.0, abs=1e-3)


def test_ratio_su2_matches_gaussian_over_j():
    r = spectral_kernel_ratio(spec("su2"), [0.3], 0.05).ratio
    j = math.sin(0.3 / math.sqrt(2)) / (0.3 / math.sqrt(2))
    assert r == pytest.approx(math.exp(-0.09 / 0.2) / j, rel=1e-6)


@pytest.mark.parametrize("label,h", [("su2", [0.45]), ("so3", [0.2]), ("su3", [0.3, 0.2]), ("torus:1", [0.5])])
@pytest.mark.parametrize("t", [0.05, 0.1, 0.2])
def test_ratio_positive_and_at_most_one(label, h, t):
    r = spectral_kernel_ratio(spec(label), h, t).ratio
    assert 0 < r <= 1


def test_ratio_rejects_singular_point():
    with pytest.raises(WeylSingularError):
        spectral_kernel_ratio(spec("su2"), [0.0], 0.1)
    with pytest.raises(WeylSingularError):
        spectral_kernel_ratio(spec("su3"), [0.0, 0.0], 0.1)


def test_shifted_ratio_is_unchanged():
    base = spectral_kernel_ratio(spec("su3"), [0.3, 0.2], 0.05)
    shifted = spectral_kernel_ratio(spec("su3"), [0.3, 0.2], 0.05, eigenvalue_shift=2.0)
    assert shifted.ratio == pytest.approx(base.ratio, rel=1e-13)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 2.0), st.floats(0.02, 1.0))
def test_su2_ratio_is_even(x, t):
    a = spectral_kernel_ratio(spec("su2"), [x], t).ratio
    b = spectral_kernel_ratio(spec("su2"), [-x], t).ratio
    assert a == pytest.approx(b, rel=1e-12, abs=1e-300)
