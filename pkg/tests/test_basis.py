import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcslane.basis import (
    d1_closed_form,
    eval_classical,
    eval_rcs,
    from_mapped,
    gauss_chebyshev2,
    gram_matrix,
    inner_product_rcs,
    to_mapped,
    weight_rcs,
)
from rcslane.errors import DomainError, InsufficientNodesError


def test_classical_small_cases():
    v, d1, _ = eval_classical(1, 0.5)
    assert list(v) == [1.0, 1.0]
    v, _, _ = eval_classical(3, 0.5)
    assert v[3] == pytest.approx(-1.0, abs=1e-15)
    _, d1, d2 = eval_classical(2, 0.5)
    assert d1[2] == pytest.approx(4.0)  # U_2 = 4s^2 - 1
    assert d2[2] == pytest.approx(8.0)


def test_classical_at_endpoints():
    v, d1, _ = eval_classical(4, 1.0)
    assert list(v) == [1, 2, 3, 4, 5]
    # U_n'(1) = n(n+1)(n+2)/3
    assert np.allclose(d1, [n * (n + 1) * (n + 2) / 3 for n in range(5)])
    v, _, _ = eval_classical(4, -1.0)
    assert list(v) == [1, -2, 3, -4, 5]


def test_classical_rejects_out_of_range():
    with pytest.raises(DomainError):
        eval_classical(3, 1.01)
    with pytest.raises(DomainError):
        eval_classical(-1, 0.0)


def test_trig_identity_oracle():
    rng = np.random.default_rng(1)
    s = rng.uniform(-1, 1, 200)
    theta = np.arccos(s)
    v, _, _ = eval_classical(30, s)
    for n in range(31):
        assert np.max(np.abs(v[n] - np.sin((n + 1) * theta) / np.sin(theta))) < 1e-11


def test_rcs_examples():
    be = eval_rcs(0, 7.3)
    assert be.values[0] == 1.0 and be.d1[0] == 0.0
    assert eval_rcs(1, 1.0).values[1] == 0.0
    assert eval_rcs(1, 0.0).d1[1] == pytest.approx(4.0)
    assert eval_rcs(1, 3.0).values[1] == pytest.approx(1.0)


def test_rcs_rejects_negative_and_nonfinite():
    with pytest.raises(DomainError):
        eval_rcs(3, -0.1)
    with pytest.raises(DomainError):
        eval_rcs(3, np.inf)


def test_rcs_shapes():
    x = np.linspace(0, 5, 12).reshape(3, 4)
    be = eval_rcs(6, x)
    assert be.values.shape == (7, 3, 4)
    assert be.d2.shape == (7, 3, 4)


def test_d1_matches_finite_differences():
    rng = np.random.default_rng(2)
    x = rng.uniform(0.1, 50, 40)
    h = 1e-6
    d1 = eval_rcs(20, x).d1
    fd = (eval_rcs(20, x + h).values - eval_rcs(20, x - h).values) / (2 * h)
    scale = np.maximum(np.abs(d1), 1e-3 * np.max(np.abs(d1), axis=1, keepdims=True))
    assert np.all(fd[0] == 0) and np.max(np.abs(fd - d1)[1:] / scale[1:]) < 1e-6


def test_d2_matches_finite_differences():
    rng = np.random.default_rng(3)
    x = rng.uniform(0.1, 50, 40)
    h = 1e-6
    d2 = eval_rcs(20, x).d2
    d1p, d1m = eval_rcs(20, x + h).d1, eval_rcs(20, x - h).d1
    fd = (d1p - d1m) / (2 * h)
    scale = np.maximum(np.abs(d2), 1e-3 * np.max(np.abs(d2), axis=1, keepdims=True))
    assert np.all(fd[0] == 0) and np.max(np.abs(fd - d2)[1:] / scale[1:]) < 1e-6


def test_d1_matches_closed_form():
    x = np.linspace(0.5, 50, 97)
    rec = eval_rcs(20, x).d1
    cf = d1_closed_form(20, x)
    scale = np.maximum(np.abs(rec), 1e-12)
    assert np.max(np.abs(rec - cf)[1:] / scale[1:]) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.0, max_value=1e6, allow_nan=False))
def test_values_bounded_by_degree(x):
    v = eval_rcs(25, x).values
    assert np.all(np.abs(v) <= np.arange(26) + 1 + 1e-9)
    assert v[0] == 1.0


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.0, max_value=1e4, allow_nan=False))
def test_mapping_round_trip(x):
    assert from_mapped(to_mapped(x)) == pytest.approx(x, rel=1e-12, abs=1e-12)


def test_gauss_rule_examples():
    r = gauss_chebyshev2(1)
    assert r.nodes[0] == pytest.approx(0.0, abs=1e-16)
    assert r.weights[0] == pytest.approx(math.pi / 2)
    r = gauss_chebyshev2(12)
    assert np.all(np.diff(r.nodes) < 0) and np.all(r.weights > 0)
    assert r.integrate(np.ones_like) == pytest.approx(math.pi / 2, abs=1e-12)
    assert abs(r.integrate(lambda s: s)) < 1e-14


def test_gauss_rule_exact_for_monomials():
    # int s^{2k} sqrt(1 - s^2) ds = pi (2k)! / (2^{2k+1} k! (k+1)!)
    n = 8
    r = gauss_chebyshev2(n)
    for k in range(n):
        exact = math.pi * math.factorial(2 * k) / (2 ** (2 * k + 1) * math.factorial(k) * math.factorial(k + 1))
        assert r.integrate(lambda s: s ** (2 * k)) == pytest.approx(exact, abs=1e-14)


def test_weight_is_change_of_variables():
    # sqrt(1 - s^2) ds = w*(x) dx with s = (x - 1)/(x + 1)
    x = np.linspace(0.01, 30, 50)
    s = to_mapped(x)
    ds = 2.0 / (1 + x) ** 2
    assert np.allclose(np.sqrt(1 - s**2) * ds, weight_rcs(x), rtol=1e-13)


def test_inner_products():
    assert inner_product_rcs(0, 0, 64) == pytest.approx(math.pi / 2, abs=1e-10)
    assert abs(inner_product_rcs(0, 1, 64)) < 1e-10
    assert inner_product_rcs(5, 5, 64) == pytest.approx(math.pi / 2, abs=1e-10)
    with pytest.raises(InsufficientNodesError):
        inner_product_rcs(10, 10, 20)


def test_gram_matrix_is_scaled_identity():
    G = gram_matrix(20, 64)
    assert np.max(np.abs(G - math.pi / 2 * np.eye(21))) < 1e-10
    with pytest.raises(InsufficientNodesError):
        gram_matrix(20, 40)
