import zlib

import numpy as np
import pytest

from rcslane.collocation import CollocationSystem, assemble, make_nodes, residual_at
from rcslane.errors import DomainError
from rcslane.newton import newton_solve
from rcslane.problems import BUILTIN_NAMES, builtin, standard_lane_emden

ALL_PROBLEMS = [builtin(n) for n in BUILTIN_NAMES] + [standard_lane_emden(m) for m in (0, 1, 1.5, 2, 2.5, 3, 4, 5)]


def test_uniform_nodes_examples():
    assert np.allclose(make_nodes(1, 3).nodes, [0.25, 0.5, 0.75, 1.0])
    assert np.allclose(make_nodes(5, 4).nodes, [1, 2, 3, 4, 5])
    ns = make_nodes(4, 19)
    assert len(ns) == 20 and ns.nodes[0] == pytest.approx(0.2) and ns.nodes[-1] == 4.0


@pytest.mark.parametrize("scheme", ["uniform", "chebyshev"])
@pytest.mark.parametrize("q,N", [(0.3, 1), (1.0, 7), (16.0, 20), (10.0, 46)])
def test_node_invariants(scheme, q, N):
    x = make_nodes(q, N, scheme).nodes
    assert x.size == N + 1
    assert np.all(np.diff(x) > 0)
    assert np.all(x > 0) and x[-1] <= q * (1 + 1e-15)


def test_chebyshev_nodes_cluster_at_ends():
    x = make_nodes(5.0, 20, "chebyshev").nodes
    gaps = np.diff(x)
    assert gaps[0] < gaps[len(gaps) // 2]


def test_node_errors():
    with pytest.raises(DomainError):
        make_nodes(0.0, 4)
    with pytest.raises(DomainError):
        make_nodes(1.0, 0)
    with pytest.raises(DomainError):
        make_nodes(1.0, 4, "random")


def test_residual_at_examples():
    sys_ = CollocationSystem(standard_lane_emden(2), 5, q=3.0)
    assert residual_at(sys_, np.zeros(6), 1.0) == pytest.approx(1.0)
    # u = 1 - x^2/6 has a_0 = -1/6
    m0 = CollocationSystem(standard_lane_emden(0), 5, q=2.0)
    a = np.zeros(6)
    a[0] = -1.0 / 6.0
    assert np.max(np.abs(residual_at(m0, a, np.linspace(0.01, 5, 40)))) < 1e-12
    with pytest.raises(DomainError):
        residual_at(m0, a, 0.0)


def test_residual_vector_equals_pointwise_residual():
    rng = np.random.default_rng(5)
    for p in ALL_PROBLEMS:
        s = CollocationSystem(p, 12, q=p.default_q)
        a = rng.normal(size=13) * 1e-2
        assert np.array_equal(s.residual_vector(a), residual_at(s, a, s.nodes.nodes))


def test_linear_jacobian_is_constant():
    s = CollocationSystem(builtin("linear_poly"), 10, q=1.0)
    rng = np.random.default_rng(0)
    _, J1 = assemble(s, rng.normal(size=11))
    _, J2 = assemble(s, rng.normal(size=11))
    assert np.array_equal(J1, J2)


@pytest.mark.parametrize("problem", ALL_PROBLEMS, ids=lambda p: p.name)
def test_jacobian_matches_finite_differences(problem):
    N = 12
    s = CollocationSystem(problem, N, q=problem.default_q)
    rng = np.random.default_rng(zlib.crc32(problem.name.encode()))
    eps = 1e-7
    worst = 0.0
    for _ in range(20):
        a = rng.normal(size=N + 1) * 1e-2
        _, J = s.assemble(a)
        fd = np.empty_like(J)
        for i in range(N + 1):
            e = np.zeros(N + 1)
            e[i] = eps
            fd[:, i] = (s.residual_vector(a + e) - s.residual_vector(a - e)) / (2 * eps)
        worst = max(worst, np.max(np.abs(fd - J)) / np.max(np.abs(J)))
    assert worst < 1e-5


def test_two_by_two_linear_system():
    # N = 1, g = 1: u = 1 - x^2/6 lies in the trial space
    s = CollocationSystem(standard_lane_emden(0), 1, q=2.0, scheme="uniform")
    r, J = s.assemble(np.zeros(2))
    a = np.linalg.solve(J, -r)
    assert np.allclose(a, [-1.0 / 6.0, 0.0], atol=1e-14)


def test_shape_checks():
    s = CollocationSystem(standard_lane_emden(2), 5, q=3.0)
    with pytest.raises(DomainError):
        s.assemble(np.zeros(5))
    with pytest.raises(DomainError):
        CollocationSystem(standard_lane_emden(2), 5, nodes=make_nodes(3.0, 6))


def test_residual_scale_bounds_residual():
    p = standard_lane_emden(3)
    s = CollocationSystem(p, 10, q=p.default_q)
    a = np.random.default_rng(2).normal(size=11)
    assert np.max(np.abs(s.residual_vector(a))) <= s.residual_scale(a)


@pytest.mark.parametrize("problem", [standard_lane_emden(0), standard_lane_emden(1), builtin("linear_poly")],
                         ids=lambda p: p.name)
def test_linear_problems_one_step(problem):
    s = CollocationSystem(problem, problem.default_N, q=problem.default_q)
    r, J = s.assemble(np.zeros(s.size))
    a = -np.linalg.solve(J, r)
    assert np.max(np.abs(s.residual_vector(a))) <= 1e-9
    assert newton_solve(s).converged
