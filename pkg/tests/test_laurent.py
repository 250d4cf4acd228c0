"""Coefficient-window arithmetic against the sampled-values path."""

import numpy as np
import pytest

from matholab import (
    MatrixLaurent,
    ScenarioError,
    VectorLaurent,
    fit_circle_samples,
    inner_product,
)

import oracle


def _random_vector_series(rng, dim, order):
    coeffs = rng.standard_normal((2 * order + 1, dim)) + 1j * rng.standard_normal((2 * order + 1, dim))
    return VectorLaurent(coeffs, order)


def _random_matrix_series(rng, dim, order):
    shape = (2 * order + 1, dim, dim)
    coeffs = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return MatrixLaurent(coeffs, order)


def test_coeff_and_support():
    f = VectorLaurent.from_coeff_map({-2: [1.0, 0.0], 3: [0.0, 2.0]}, 2)
    assert f.order == 3
    assert f.support() == (-2, 3)
    assert f.coeff(-2)[0] == 1.0
    assert f.coeff(0)[0] == 0.0
    assert np.all(f.coeff(7) == 0.0)


def test_trim_drops_zero_margins():
    f = VectorLaurent.from_coeff_map({1: [1.0]}, 1).with_order(6)
    g = f.trim()
    assert g.order == 1
    assert g.allclose(f)


def test_linear_ops_match_values():
    rng = np.random.default_rng(11)
    f = _random_vector_series(rng, 2, 4)
    g = _random_vector_series(rng, 2, 6)
    zs = oracle.nodes(64)
    lhs = oracle.sample_series(f + g.scale(2.0 - 1j) - (-f), 64)
    rhs = 2 * oracle.sample_series(f, 64) + (2.0 - 1j) * oracle.sample_series(g, 64)
    assert np.max(np.abs(lhs - rhs)) < 1e-12
    assert len(zs) == 64


def test_mul_is_pointwise_product():
    rng = np.random.default_rng(12)
    a = _random_matrix_series(rng, 3, 3)
    f = _random_vector_series(rng, 3, 4)
    b = _random_matrix_series(rng, 3, 2)
    zs = oracle.nodes(128)
    a_vals = oracle.sample_series(a, 128)
    assert np.max(np.abs(oracle.sample_series(a.mul(f), 128)
                         - oracle.multiply(a_vals, oracle.sample_series(f, 128)))) < 1e-10
    prod = a.mul(b)
    direct = a_vals @ oracle.sample_series(b, 128)
    assert np.max(np.abs(oracle.sample_series(prod, 128) - direct)) < 1e-10
    assert prod.order == a.order + b.order
    assert len(zs) == 128


def test_shift_and_reflect_values():
    rng = np.random.default_rng(13)
    f = _random_vector_series(rng, 2, 5)
    zs = oracle.nodes(64)
    shifted = oracle.sample_series(f.shift(3), 64)
    assert np.max(np.abs(shifted - zs[:, None] ** 3 * oracle.sample_series(f, 64))) < 1e-12
    # reflect_z swaps z for conj(z) on the circle
    refl = oracle.sample_series(f.reflect_z(), 64)
    idx = (-np.arange(64)) % 64
    assert np.max(np.abs(refl - oracle.sample_series(f, 64)[idx])) < 1e-12


def test_flip_matches_value_formula():
    rng = np.random.default_rng(14)
    f = _random_vector_series(rng, 2, 5)
    flipped = oracle.sample_series(f.flip(), 64)
    expected = oracle.flip_values(oracle.sample_series(f, 64), oracle.nodes(64))
    assert np.max(np.abs(flipped - expected)) < 1e-12


def test_flip_is_an_involution_and_isometry():
    rng = np.random.default_rng(15)
    f = _random_vector_series(rng, 3, 6)
    assert f.flip().flip().allclose(f, tol=1e-13)
    assert abs(f.flip().norm() - f.norm()) < 1e-13


def test_conj_coeffs_values():
    rng = np.random.default_rng(16)
    f = _random_vector_series(rng, 2, 4)
    vals = oracle.sample_series(f.conj_coeffs(), 64)
    idx = (-np.arange(64)) % 64
    assert np.max(np.abs(vals - np.conj(oracle.sample_series(f, 64)[idx]))) < 1e-12


def test_adjoint_star_and_tilde_values():
    rng = np.random.default_rng(17)
    a = _random_matrix_series(rng, 2, 4)
    vals = oracle.sample_series(a, 64)
    adj = oracle.sample_series(a.adjoint_star(), 64)
    assert np.max(np.abs(adj - np.conj(np.transpose(vals, (0, 2, 1))))) < 1e-12
    idx = (-np.arange(64)) % 64
    tilde = oracle.sample_series(a.tilde(), 64)
    assert np.max(np.abs(tilde - np.conj(np.transpose(vals[idx], (0, 2, 1))))) < 1e-12


def test_riesz_split():
    rng = np.random.default_rng(18)
    f = _random_vector_series(rng, 2, 5)
    plus, minus = f.riesz_split()
    assert plus.is_analytic()
    assert np.all(minus.coeffs[minus.order:] == 0)
    assert (plus + minus).allclose(f)
    # against the fft projection
    vals = oracle.analytic_part(oracle.sample_series(f, 64))
    assert np.max(np.abs(oracle.sample_series(plus, 64) - vals)) < 1e-12


def test_norm_is_parseval():
    rng = np.random.default_rng(19)
    f = _random_vector_series(rng, 3, 5)
    vals = oracle.sample_series(f, 256)
    quad = np.sqrt(np.real(oracle.inner(vals, vals)))
    assert abs(f.norm() - quad) < 1e-11
    g = _random_vector_series(rng, 3, 3)
    pair = oracle.inner(vals, oracle.sample_series(g, 256))
    assert abs(inner_product(f, g) - pair) < 1e-11


def test_evaluate_on_and_inside_circle():
    rng = np.random.default_rng(20)
    f = _random_vector_series(rng, 2, 4)
    z0 = np.exp(0.7j)
    direct = sum(f.coeff(n) * z0 ** n for n in range(-4, 5))
    assert np.max(np.abs(f.evaluate(z0) - direct)) < 1e-12
    plus, _ = f.riesz_split()
    inside = sum(plus.coeff(n) * 0.3 ** n for n in range(0, 5))
    assert np.max(np.abs(plus.evaluate(0.3) - inside)) < 1e-12
    assert np.max(np.abs(plus.evaluate(0.0) - plus.coeff(0))) == 0.0
    with pytest.raises(ValueError):
        f.evaluate(0.5)  # anti-analytic part present


def test_truncate_moves_mass_to_tail():
    rng = np.random.default_rng(21)
    f = _random_vector_series(rng, 2, 6)
    g = f.truncate(3)
    dropped = np.sqrt(sum(np.sum(np.abs(f.coeff(n)) ** 2)
                          for n in range(-6, 7) if abs(n) > 3))
    assert g.order == 3
    assert abs(g.tail_bound - dropped) < 1e-12


def test_sup_bound_certifies_samples():
    rng = np.random.default_rng(22)
    a = _random_matrix_series(rng, 2, 4)
    vals = oracle.sample_series(a, 128)
    top = np.max(np.linalg.norm(vals, ord=2, axis=(1, 2)))
    assert top <= a.sup_bound() + 1e-12


def test_monomial_and_constant():
    e = MatrixLaurent.monomial(-2, np.eye(2))
    assert e.support() == (-2, -2)
    c = MatrixLaurent.constant([[1.0, 2.0], [3.0, 4.0]])
    assert c.order == 0
    assert c.mul(e).support() == (-2, -2)


def test_json_roundtrip():
    rng = np.random.default_rng(23)
    for make in (_random_vector_series, _random_matrix_series):
        f = make(rng, 2, 3)
        g = type(f).from_json(f.to_json())
        assert g.allclose(f, tol=0.0)
        assert g.order == f.order


def test_json_rejects_bad_payloads():
    with pytest.raises(ScenarioError):
        VectorLaurent.from_json({"coeffs": {}})
    with pytest.raises(ScenarioError):
        VectorLaurent.from_json({"dim": 1, "coeffs": {"x": [[1, 0]]}})
    with pytest.raises(ScenarioError):
        VectorLaurent.from_json({"dim": 1, "coeffs": {"0": [[1, 0]]}, "trunc_order": -1})
    with pytest.raises(ScenarioError):
        MatrixLaurent.from_json({"dim": 2, "coeffs": {"0": [[[1, 0]]]}})


def test_fit_circle_samples_recovers_window():
    rng = np.random.default_rng(24)
    f = _random_matrix_series(rng, 2, 5)
    vals = oracle.sample_series(f, 64)
    g = fit_circle_samples(vals, 5, kind="matrix")
    assert g.allclose(f, tol=1e-11)
    with pytest.raises(ValueError):
        fit_circle_samples(vals[:8], 5, kind="matrix")


def test_linearity_of_window_sum():
    # mul distributes over + exactly on polynomial coefficients
    a = MatrixLaurent.from_coeff_map({0: [[1.0]], 2: [[0.5]]}, 1)
    f = VectorLaurent.from_coeff_map({-1: [2.0]}, 1)
    g = VectorLaurent.from_coeff_map({1: [1.0 + 1j]}, 1)
    assert a.mul(f + g).allclose(a.mul(f) + a.mul(g), tol=0.0)
