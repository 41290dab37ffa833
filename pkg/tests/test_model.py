import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import heisenberg_qsde
from spinqsde.algebra import theta
from spinqsde.errors import DomainError, StepSizeError
from spinqsde.model import (ANNIHILATION_ITO_TABLE, QUADRATURE_ITO_TABLE, BilinearQSDE,
                            PhysicalParams, master_mean_oracle, quadrature_input,
                            quadrature_input_inverse, quadrature_ito_table, realize,
                            simulate_mean, trajectory_arrays)
from spinqsde.pauli import lindblad_coefficient_check
from spinqsde.realizability import random_params


def assert_qsde(q, F0, F, G1, G2, H1, H2):
    for name, expected in zip(BilinearQSDE.FIELDS, (F0, F, G1, G2, H1, H2)):
        np.testing.assert_allclose(getattr(q, name), expected, atol=1e-15, err_msg=name)


# expected arrays below were produced by tests/oracles.heisenberg_qsde,
# which builds the generator from explicit 2x2 matrices
def test_realize_decay_along_x(decay_x):
    assert_qsde(realize(decay_x),
                F0=[0, 0, 0], F=np.diag([0, -2, -2]), G1=np.zeros((3, 3)),
                G2=[[0, 0, 0], [0, 0, -2], [0, 2, 0]], H1=[2, 0, 0], H2=[0, 0, 0])


def test_realize_dephasing(dephasing):
    assert_qsde(realize(dephasing),
                F0=[0, 0, 0], F=np.diag([-2, -2, 0]),
                G1=[[0, 2, 0], [-2, 0, 0], [0, 0, 0]], G2=np.zeros((3, 3)),
                H1=[0, 0, 0], H2=[0, 0, 2])


def test_realize_closed_system():
    z = np.zeros((3, 3))
    assert_qsde(realize(PhysicalParams([1, 2, 3], [0, 0, 0])),
                F0=[0, 0, 0], F=-2 * theta([1., 2, 3]), G1=z, G2=z,
                H1=[0, 0, 0], H2=[0, 0, 0])


def test_realize_matches_matrix_generator(rng):
    for _ in range(50):
        p = random_params(rng, alpha_range=3, lam_radius=2)
        expected = heisenberg_qsde(p.alpha, p.lam)
        q = realize(p)
        for name, e in zip(BilinearQSDE.FIELDS, expected):
            assert np.max(np.abs(np.imag(e))) < 1e-12
            np.testing.assert_allclose(getattr(q, name), np.real(e), atol=1e-12)


def test_realize_noise_matrices_antisymmetric(rng):
    for _ in range(20):
        q = realize(random_params(rng))
        assert np.array_equal(q.G1.T, -q.G1)
        assert np.array_equal(q.G2.T, -q.G2)


def test_realize_agrees_with_operator_algebra(rng):
    for _ in range(20):
        p = random_params(rng)
        assert max(lindblad_coefficient_check(p.alpha, p.lam).values()) < 1e-12


def test_params_validation():
    with pytest.raises(DomainError):
        PhysicalParams([1j, 0, 0], [0, 0, 0])
    with pytest.raises(DomainError):
        PhysicalParams([1, 0], [0, 0, 0])
    with pytest.raises(DomainError):
        PhysicalParams([np.nan, 0, 0], [0, 0, 0])


def test_qsde_validation():
    z3, z33 = np.zeros(3), np.zeros((3, 3))
    with pytest.raises(DomainError, match="F"):
        BilinearQSDE(z3, np.zeros((2, 2)), z33, z33, z3, z3)
    with pytest.raises(DomainError, match="real"):
        BilinearQSDE(z3 + 1j, z33, z33, z33, z3, z3)
    with pytest.raises(DomainError):
        BilinearQSDE(z3, z33 + np.inf, z33, z33, z3, z3)


def test_quadrature_transform():
    np.testing.assert_array_equal(quadrature_input([1, 1]), [2, 0])
    rng = np.random.default_rng(3)
    for _ in range(20):
        w = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert np.max(np.abs(quadrature_input_inverse(quadrature_input(w)) - w)) < 1e-14
    np.testing.assert_array_equal(QUADRATURE_ITO_TABLE, [[1, 1j], [-1j, 1]])
    np.testing.assert_array_equal(quadrature_ito_table(ANNIHILATION_ITO_TABLE),
                                  [[1, 1j], [-1j, 1]])


def test_simulate_dephasing_endpoint(dephasing):
    t, r = trajectory_arrays(simulate_mean(realize(dephasing), [1, 0, 0], 1.0, 1e-3))
    assert len(t) == 1001 and t[-1] == 1.0
    np.testing.assert_allclose(r[-1], [np.exp(-2), 0, 0], atol=1e-6)
    np.testing.assert_allclose(r[:, 0], np.exp(-2 * t), atol=1e-6)


def test_simulate_closed_rotation_preserves_norm():
    q = realize(PhysicalParams([0, 0, 1], [0, 0, 0]))
    t, r = trajectory_arrays(simulate_mean(q, [1, 0, 0], 1.0, 1e-3))
    assert np.max(np.abs(np.linalg.norm(r, axis=1) - 1)) < 1e-6
    assert np.max(np.abs(r[:, 2])) == 0
    np.testing.assert_allclose(r[:, :2], np.c_[np.cos(2 * t), np.sin(2 * t)], atol=1e-6)


def test_simulate_zero_system_is_constant():
    states = simulate_mean(BilinearQSDE.zeros(), [0.3, -0.2, 0.5], 1.0, 0.1)
    assert all(np.array_equal(s.r, [0.3, -0.2, 0.5]) for s in states)


def test_simulate_partial_last_step():
    t, _ = trajectory_arrays(simulate_mean(BilinearQSDE.zeros(), [0, 0, 0], 1.0, 0.3))
    np.testing.assert_allclose(t, [0, 0.3, 0.6, 0.9, 1.0])


@pytest.mark.parametrize("T, dt", [(1.0, 0.0), (1.0, -1e-3), (1.0, 2.0), (0.0, 0.0)])
def test_step_size_errors(T, dt):
    with pytest.raises(StepSizeError):
        simulate_mean(BilinearQSDE.zeros(), [0, 0, 1], T, dt)
    with pytest.raises(StepSizeError):
        master_mean_oracle(PhysicalParams([0] * 3, [0] * 3), [0, 0, 1], T, dt)


def test_master_oracle_rejects_non_state():
    with pytest.raises(DomainError):
        master_mean_oracle(PhysicalParams([0] * 3, [0] * 3), [1, 1, 0], 1.0, 1e-2)


def test_master_oracle_matches_dephasing(dephasing):
    a = simulate_mean(realize(dephasing), [1, 0, 0], 1.0, 1e-3)
    b = master_mean_oracle(dephasing, [1, 0, 0], 1.0, 1e-3)
    assert max(np.max(np.abs(u.r - v.r)) for u, v in zip(a, b)) < 1e-6


def test_master_oracle_closed_system_purity():
    r0 = np.array([0.6, 0.0, 0.8])
    states = master_mean_oracle(PhysicalParams([0.4, -1, 2], [0, 0, 0]), r0, 1.0, 1e-3)
    # Tr(rho^2) = (1 + |r|^2)/2 for a qubit; trace is 1 by construction
    purity = [(1 + s.r @ s.r) / 2 for s in states]
    assert np.max(np.abs(np.array(purity) - purity[0])) < 1e-8


def test_master_oracle_mixed_state_fixed_under_dephasing():
    states = master_mean_oracle(PhysicalParams([0] * 3, [0, 0, 0.7j]), [0, 0, 0], 1.0, 1e-2)
    assert all(np.max(np.abs(s.r)) < 1e-15 for s in states)


unit_ball = st.tuples(*[st.floats(-1, 1)] * 3).filter(lambda v: np.linalg.norm(v) <= 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), unit_ball)
def test_bloch_ball_invariance(seed, r0):
    p = random_params(np.random.default_rng(seed))
    _, r = trajectory_arrays(simulate_mean(realize(p), r0, 1.0, 1e-2))
    assert np.max(np.linalg.norm(r, axis=1)) <= 1 + 1e-6
