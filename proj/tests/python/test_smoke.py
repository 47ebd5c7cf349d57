import math

import pytest

import diqpq


def test_pmax_reference():
    assert diqpq.p_max(math.pi / 2) == pytest.approx(0.8535533905932737, abs=1e-12)


def test_optimal_angles():
    a = diqpq.optimal_angles(math.pi / 2)
    assert a.psi1 == pytest.approx(math.pi / 4, abs=1e-12)
    assert a.psi2 == pytest.approx(3 * math.pi / 4, abs=1e-12)
    assert diqpq.success_probability(math.pi / 2, a.psi1, a.psi2) == pytest.approx(
        diqpq.p_max(math.pi / 2), abs=1e-12
    )


def test_state_and_distribution():
    state = diqpq.make_honest_state(math.pi / 2)
    assert state.norm_sq() == pytest.approx(1.0, abs=1e-12)
    dist = diqpq.joint_distribution(
        state, diqpq.basis_from_angle(0.0), diqpq.basis_from_angle(math.pi / 4)
    )
    assert dist.sum() == pytest.approx(1.0, abs=1e-12)
    assert dist.p[0] == pytest.approx((2 + math.sqrt(2)) / 8, abs=1e-12)


def test_bounds():
    assert diqpq.chernoff_sample_size(0.01, 0.01, 0.853553391) == 31605
    assert diqpq.qpq_deviation_nu(10000, 20000, 1e-6) == pytest.approx(
        0.037171080303133604, abs=1e-12
    )
    iv = diqpq.acceptance_interval(math.pi / 2, 0.01)
    assert iv.contains(0.85)
    assert not iv.contains(0.8)


def test_adversary_model():
    assert diqpq.bias_threshold_exact(math.pi / 2, 0.01) == pytest.approx(
        0.1534903674868763, abs=1e-12
    )
    assert diqpq.leakage_fraction(math.pi / 2, 0.3) == pytest.approx(0.68, abs=1e-12)


def test_run_protocol_deterministic():
    params = diqpq.ProtocolParams.defaults(math.pi / 2, 0.05, 0.1)
    t1 = diqpq.run_protocol(params, None, 7)
    t2 = diqpq.run_protocol(params, None, 7)
    assert t1.to_json(True) == t2.to_json(True)
    assert t1.decision == diqpq.Decision.Accept
    assert abs(t1.test_statistic - diqpq.p_max(math.pi / 2)) < 0.05
    assert len(t1.chsh_indices) == params.m


def test_adversarial_run_aborts():
    params = diqpq.ProtocolParams.defaults(math.pi / 2, 0.01, 0.01)
    params.m = 2000
    params.n = 4000
    adv = diqpq.AdversaryConfig(0.5)
    t = diqpq.run_protocol(params, adv, 3)
    assert t.decision == diqpq.Decision.Abort
    assert len(t.key.bob_bits) == 0


def test_monte_carlo_thread_invariance():
    params = diqpq.ProtocolParams.defaults(math.pi / 2, 0.05, 0.1)
    s1 = diqpq.monte_carlo_summary(params, None, 20, 5, 1)
    s4 = diqpq.monte_carlo_summary(params, None, 20, 5, 4)
    assert s1.mean_statistic == s4.mean_statistic
    assert s1.acceptance_rate == s4.acceptance_rate
