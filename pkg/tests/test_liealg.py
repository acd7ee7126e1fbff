from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lieheat import DomainError, GroupSpec, GroupSpecError, parse_group_spec
from lieheat.liealg import (
    ad_angles,
    ad_matrix,
    bracket,
    build_algebra,
    cartan_representative,
    casimir_trace,
    j_function,
    sinc_half,
)

from conftest import CATALOG, alg_and_rs

PAULI = np.array(
    [[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]],
    dtype=complex,
)


# -- group specs -------------------------------------------------------------


@pytest.mark.parametrize(
    "text,family,rank",
    [("torus:3", "torus", 3), ("SU2", "su2", None), (" so3 ", "so3", None), ("su3", "su3", None)],
)
def test_parse_group_spec(text, family, rank):
    spec = parse_group_spec(text)
    assert spec.family == family
    assert spec.torus_rank == rank


@pytest.mark.parametrize("text", ["su4", "torus", "torus:0", "torus:-1", "so3:2", ""])
def test_parse_group_spec_rejects(text):
    with pytest.raises(GroupSpecError):
        parse_group_spec(text)


@pytest.mark.parametrize("scale", [0.0, -1.0, float("nan"), float("inf"), "x"])
def test_bad_scale(scale):
    with pytest.raises(GroupSpecError):
        parse_group_spec("su2", scale)


def test_spec_label_roundtrip():
    spec = GroupSpec("torus", 2, 0.5)
    assert spec.label == "torus:2@0.5"
    assert parse_group_spec("su3").with_scale(2.0).metric_scale == 2.0


# -- structure constants -----------------------------------------------------


def test_torus_is_abelian():
    alg = build_algebra(parse_group_spec("torus:2"))
    assert alg.n == 2
    assert not np.any(alg.c)
    assert alg.is_abelian


def test_su2_structure_constants_match_pauli_products():
    # e_k = -i sigma_k / sqrt(2), inner product -tr(XY)
    e = -1j * PAULI / math.sqrt(2.0)
    alg = build_algebra(parse_group_spec("su2"))
    for i, j in itertools.product(range(3), repeat=2):
        comm = e[i] @ e[j] - e[j] @ e[i]
        expected = [-np.trace(comm @ e[k]).real for k in range(3)]
        np.testing.assert_allclose(alg.c[i, j], expected, atol=1e-14)
    assert alg.c[0, 1, 2] == pytest.approx(math.sqrt(2.0), abs=1e-14)
    assert alg.c[1, 2, 0] == pytest.approx(math.sqrt(2.0), abs=1e-14)
    assert alg.c[2, 0, 1] == pytest.approx(math.sqrt(2.0), abs=1e-14)


def test_su2_bracket_example():
    alg = build_algebra(parse_group_spec("su2"))
    np.testing.assert_allclose(bracket(alg, [1, 0, 0], [0, 1, 0]), [0, 0, math.sqrt(2)], atol=1e-14)


@pytest.mark.parametrize("label", CATALOG)
def test_structure_constant_invariants(label):
    alg, _ = alg_and_rs(label)
    c = alg.c
    np.testing.assert_allclose(c, -c.transpose(1, 0, 2), atol=1e-14)  # antisymmetry
    np.testing.assert_allclose(c, -c.transpose(0, 2, 1), atol=1e-14)  # ad-invariance of the metric
    n = alg.n
    # brute-force Jacobi over all index triples
    worst = 0.0
    for i, j, k in itertools.product(range(n), repeat=3):
        ei, ej, ek = np.eye(n)[[i, j, k]]
        jac = (
            bracket(alg, ei, bracket(alg, ej, ek))
            + bracket(alg, ej, bracket(alg, ek, ei))
            + bracket(alg, ek, bracket(alg, ei, ej))
        )
        worst = max(worst, np.abs(jac).max())
    assert worst < 1e-12


@pytest.mark.parametrize("scale", [0.5, 1.0, 2.0])
def test_basis_is_orthonormal_in_defining_rep(scale):
    for label in ("su2", "so3", "su3"):
        alg = build_algebra(parse_group_spec(label, scale))
        mats = alg.rep_matrices
        gram = np.array([[scale * -np.trace(a @ b).real for b in mats] for a in mats])
        np.testing.assert_allclose(gram, np.eye(alg.n), atol=1e-13)


def test_ad_matrix_example():
    alg = build_algebra(parse_group_spec("su2"))
    m = ad_matrix(alg, [0, 0, 1])
    r2 = math.sqrt(2.0)
    np.testing.assert_allclose(m @ [1, 0, 0], [0, r2, 0], atol=1e-14)
    np.testing.assert_allclose(m @ [0, 1, 0], [-r2, 0, 0], atol=1e-14)
    np.testing.assert_allclose(m @ [0, 0, 1], [0, 0, 0], atol=1e-14)
    eig = np.sort_complex(np.linalg.eigvals(m))
    np.testing.assert_allclose(eig, [-1j * r2, 0, 1j * r2], atol=1e-12)
    assert not np.any(ad_matrix(alg, np.zeros(3)))


def test_bracket_shape_check():
    alg = build_algebra(parse_group_spec("su2"))
    with pytest.raises(ValueError):
        bracket(alg, [1, 0], [0, 1, 0])


# -- Casimir trace -----------------------------------------------------------


@pytest.mark.parametrize("label,expected", [("su2", -12.0), ("so3", -3.0), ("su3", -48.0), ("torus:2", 0.0)])
def test_casimir_trace_values(label, expected):
    alg, _ = alg_and_rs(label)
    assert casimir_trace(alg) == pytest.approx(expected, abs=1e-12)
    # independent route: tr(ad_i^2) = -sum_jk c_ijk^2 for a skew ad
    assert -np.sum(alg.c ** 2) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("label", ["su2", "so3", "su3"])
@pytest.mark.parametrize("scale", [0.5, 2.0, 3.7])
def test_casimir_trace_scales_inversely(label, scale):
    base = casimir_trace(build_algebra(parse_group_spec(label)))
    scaled = casimir_trace(build_algebra(parse_group_spec(label, scale)))
    assert scaled == pytest.approx(base / scale, rel=1e-10)


# -- j function --------------------------------------------------------------


def test_sinc_half_branches_agree():
    for theta in (1e-4 * (1 - 1e-12), 1e-4, 1.1e-4):
        assert sinc_half(theta) == pytest.approx(math.sin(theta / 2) / (theta / 2), rel=1e-15)
    assert sinc_half(0.0) == 1.0


@pytest.mark.parametrize("label", CATALOG)
def test_j_at_origin(label):
    alg, _ = alg_and_rs(label)
    assert j_function(alg, np.zeros(alg.n)) == 1.0


def test_j_torus_is_one(rng):
    alg, _ = alg_and_rs("torus:2")
    for x in rng.normal(size=(5, 2)) * 10:
        assert j_function(alg, x) == 1.0


def test_j_su2_example():
    alg, _ = alg_and_rs("su2")
    X = np.array([0.0, 0.0, math.sqrt(2.0)])
    assert j_function(alg, X) == pytest.approx(math.sin(1.0), rel=1e-14)
    # direct determinant of the power series, via the block-exponential trick
    ad = ad_matrix(alg, X)
    n = alg.n
    block = np.zeros((2 * n, 2 * n))
    block[:n, :n] = -ad
    block[:n, n:] = np.eye(n)
    series = scipy.linalg.expm(block)[:n, n:]  # sum (-ad)^k / (k+1)!
    assert math.sqrt(np.linalg.det(series)) == pytest.approx(j_function(alg, X), rel=1e-13)


def test_j_domain_error():
    alg, _ = alg_and_rs("su2")
    # largest ad angle is sqrt(2)*|x|
    with pytest.raises(DomainError):
        j_function(alg, [0, 0, 2 * math.pi / math.sqrt(2.0) + 1e-9])
    assert j_function(alg, [0, 0, 2 * math.pi / math.sqrt(2.0) - 1e-3]) > 0


def vectors(n, bound):
    return arrays(np.float64, n, elements=st.floats(-bound, bound, allow_nan=False))


@settings(max_examples=60, deadline=None)
@given(vectors(8, 0.8))
def test_j_even_and_bounded_su3(x):
    alg, _ = alg_and_rs("su3")
    j = j_function(alg, x)
    assert abs(j - j_function(alg, -x)) < 1e-12
    assert 0.0 < j <= 1.0 + 1e-15


@settings(max_examples=40, deadline=None)
@given(vectors(3, 1.0), st.floats(0.05, 0.95))
def test_j_nonincreasing_along_rays(x, frac):
    alg, _ = alg_and_rs("su2")
    if np.linalg.norm(x) < 1e-6:
        return
    # scale so that the largest angle stays below 2*pi
    top = ad_angles(alg, x).max()
    ray = x * (0.999 * 2 * math.pi / top)
    assert j_function(alg, frac * ray) >= j_function(alg, ray) - 1e-15


@settings(max_examples=40, deadline=None)
@given(vectors(8, 1.0), vectors(8, 1.0), st.floats(-3, 3))
def test_bracket_bilinear_antisymmetric(x, y, a):
    alg, _ = alg_and_rs("su3")
    np.testing.assert_allclose(bracket(alg, x, y), -bracket(alg, y, x), atol=1e-12)
    np.testing.assert_allclose(bracket(alg, a * x, y), a * bracket(alg, x, y), atol=1e-11)
    assert np.abs(bracket(alg, x, x)).max() < 1e-13
    m = ad_matrix(alg, x)
    np.testing.assert_allclose(m + m.T, 0, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(vectors(8, 1.0))
def test_cartan_representative_preserves_angles(x):
    alg, _ = alg_and_rs("su3")
    h = cartan_representative(alg, x)
    # compare squared angles: zero blocks leave 1e-16 noise that sqrt magnifies
    np.testing.assert_allclose(
        np.sort(ad_angles(alg, alg.embed_cartan(h)) ** 2), np.sort(ad_angles(alg, x) ** 2), atol=1e-9
    )


@settings(max_examples=30, deadline=None)
@given(vectors(3, 2.0))
def test_cartan_representative_so3(x):
    alg, _ = alg_and_rs("so3")
    h = cartan_representative(alg, x)
    # compare squared angles: zero blocks leave 1e-16 noise that sqrt magnifies
    np.testing.assert_allclose(
        np.sort(ad_angles(alg, alg.embed_cartan(h)) ** 2), np.sort(ad_angles(alg, x) ** 2), atol=1e-9
    )
