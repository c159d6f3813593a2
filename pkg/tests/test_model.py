import warnings

import numpy as np
import pytest
from draws import CONFIGS, random_frequency_config
from hypothesis import given, settings
from hypothesis import strategies as st

from su3bloch.exceptions import ConfigurationIncompleteError, InvalidArgumentError
from su3bloch.model import (
    SystemConfig,
    detunings_from_frequencies,
    dressed_hamiltonian,
    dressing_unitary,
    free_level_energies,
    rwa_hamiltonian,
    verify_dressing,
)

finite = st.floats(-5, 5, allow_nan=False)


@pytest.mark.parametrize(
    "args,expected",
    [((1, 1, 3, 3), (0, 0)), ((1, 2, 4, 5), (0, 0)), ((1, 1, 2, 2), (1, 1))],
)
def test_detunings_from_frequencies(args, expected):
    assert detunings_from_frequencies(*args) == pytest.approx(expected, abs=1e-15)


def test_cascade_detunings_follow_cascade_gaps():
    # cascade levels w2, w1 - w2, -w1: gaps 2 w1 - w2 and 2 w2 - w1
    w1, w2 = 1.3, 1.1
    d1, d2 = detunings_from_frequencies(w1, w2, 2 * w1 - w2, 2 * w2 - w1, "cascade")
    assert (d1, d2) == pytest.approx((0, 0), abs=1e-15)


def test_dressed_examples():
    h = dressed_hamiltonian(SystemConfig("cascade", 1, 2, 0, 0))
    np.testing.assert_array_equal(h, [[0, 2, 0], [2, 0, 1], [0, 1, 0]])
    h = dressed_hamiltonian(SystemConfig("lambda", 1, 2, 3, 3))
    np.testing.assert_allclose(h, [[2, 2, 1], [2, -1, 0], [1, 0, -1]], atol=1e-15)
    h = dressed_hamiltonian(SystemConfig("vee", 0, 0, 3, 0))
    np.testing.assert_allclose(h, np.diag([2, -1, -1]), atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CONFIGS), finite, finite, finite, finite)
def test_dressed_traceless_hermitian(conf, k1, k2, d1, d2):
    h = dressed_hamiltonian(SystemConfig(conf, k1, k2, d1, d2))
    assert abs(np.trace(h)) < 1e-12
    np.testing.assert_array_equal(h, h.conj().T)


@pytest.mark.parametrize(
    "conf,pattern",
    [("cascade", {(0, 1), (1, 2)}), ("lambda", {(0, 1), (0, 2)}), ("vee", {(0, 2), (1, 2)})],
)
def test_resonant_offdiagonal_pattern(conf, pattern):
    h = dressed_hamiltonian(SystemConfig(conf, 1.0, 0.7, 0, 0))
    found = {(i, j) for i in range(3) for j in range(i + 1, 3) if abs(h[i, j]) > 0}
    assert found == pattern
    np.testing.assert_array_equal(np.diag(h), 0)


def test_two_level_limit_eigenvalues():
    h = dressed_hamiltonian(SystemConfig("cascade", 1.7, 0.0, 0, 0))
    np.testing.assert_allclose(np.linalg.eigvalsh(h), [-1.7, 0, 1.7], atol=1e-12)


def test_rwa_free_part():
    cfg = SystemConfig("cascade", 0, 0, omega1=1.3, omega2=1.1, big_omega1=1.0, big_omega2=1.0)
    np.testing.assert_allclose(rwa_hamiltonian(cfg, 0.0), 1.3 * np.diag([0, 1, -1]) + 1.1 * np.diag([1, -1, 0]))
    np.testing.assert_allclose(np.diag(rwa_hamiltonian(cfg, 0.0)).real, [1.1, 1.3 - 1.1, -1.3])


@pytest.mark.parametrize("conf,diag", [
    ("cascade", lambda w1, w2: [w2, w1 - w2, -w1]),
    ("lambda", lambda w1, w2: [w1 + w2, -w2, -w1]),
    ("vee", lambda w1, w2: [w1, w2, -(w1 + w2)]),
])
def test_free_level_energies(conf, diag):
    cfg = SystemConfig(conf, 1, 1, 0, 0, omega1=1.6, omega2=0.9, check_hierarchy=False)
    np.testing.assert_allclose(free_level_energies(cfg), diag(1.6, 0.9), atol=1e-15)


@pytest.mark.parametrize("conf", CONFIGS)
def test_rwa_hermitian(conf, rng):
    cfg = random_frequency_config(rng, conf)
    for t in rng.uniform(0, 50, size=5):
        h = rwa_hamiltonian(cfg, t)
        assert np.abs(h - h.conj().T).max() < 1e-12


def test_rwa_needs_frequencies():
    with pytest.raises(ConfigurationIncompleteError):
        rwa_hamiltonian(SystemConfig("vee", 1, 1, 0, 0), 0.0)
    with pytest.raises(ConfigurationIncompleteError):
        dressing_unitary(SystemConfig("vee", 1, 1, 0, 0), 0.0)


@pytest.mark.parametrize("conf", CONFIGS)
def test_dressing_unitary(conf, rng):
    cfg = random_frequency_config(rng, conf)
    np.testing.assert_allclose(dressing_unitary(cfg, 0.0), np.eye(3), atol=0)
    for t in (0.1, 1, 10):
        u = dressing_unitary(cfg, t)
        np.testing.assert_allclose(u @ u.conj().T, np.eye(3), atol=1e-12)


def test_cascade_dressing_exponent():
    cfg = SystemConfig("cascade", 1, 1, omega1=1, omega2=1, big_omega1=3, big_omega2=3)
    np.testing.assert_allclose(dressing_unitary(cfg, 1.0), np.diag(np.exp(-1j * np.array([3, 0, -3]))), atol=1e-15)


def test_verify_dressing_examples():
    times = [0, 0.7, 2.3]
    cfg = SystemConfig("cascade", 1, 0.7, omega1=1, omega2=1, big_omega1=3, big_omega2=3)
    rep = verify_dressing(cfg, times)
    assert rep.spread < 1e-10 and rep.deviation < 1e-10

    # lambda gaps 2 w1 + w2 and w1 + 2 w2; pick fields so that d1 = 1, d2 = 2
    w1, w2 = 1.5, 0.8
    cfg = SystemConfig("lambda", 1, 0.7, omega1=w1, omega2=w2,
                       big_omega1=2 * w1 + w2 - 1, big_omega2=w1 + 2 * w2 - 2)
    assert (cfg.delta1, cfg.delta2) == pytest.approx((1, 2))
    rep = verify_dressing(cfg, times)
    assert rep.spread < 1e-10 and rep.deviation < 1e-10

    cfg = SystemConfig("vee", 0, 0, omega1=1.5, omega2=0.8, big_omega1=3, big_omega2=2.5)
    rep = verify_dressing(cfg, times)
    h = rep.transformed[1]
    np.testing.assert_allclose(h - np.diag(np.diag(h)), 0, atol=1e-14)
    np.testing.assert_allclose(h, dressed_hamiltonian(cfg), atol=1e-12)


def test_uniform_detuning_formula_does_not_dress_cascade():
    # the uniform formula leaves a time-independent but wrong cascade diagonal
    w1 = w2 = 1.0
    d1, d2 = detunings_from_frequencies(w1, w2, 3, 3)
    cfg_true = SystemConfig("cascade", 1, 0.7, omega1=w1, omega2=w2, big_omega1=3, big_omega2=3)
    rep = verify_dressing(cfg_true, [0, 1.0])
    wrong = dressed_hamiltonian(SystemConfig("cascade", 1, 0.7, d1, d2))
    assert np.abs(rep.transformed[0] - wrong).max() > 1.0


@pytest.mark.parametrize("conf", CONFIGS)
def test_verify_dressing_random(conf, rng):
    for _ in range(5):
        rep = verify_dressing(random_frequency_config(rng, conf), rng.uniform(0, 20, size=4))
        assert rep.passed(1e-10)


def test_config_validation():
    with pytest.raises(InvalidArgumentError):
        SystemConfig("cascade", float("nan"), 1, 0, 0)
    with pytest.raises(InvalidArgumentError):
        SystemConfig("cascade", 1, 1)
    with pytest.raises(InvalidArgumentError):
        SystemConfig("sigma", 1, 1, 0, 0)
    with pytest.raises(InvalidArgumentError):
        SystemConfig("lambda", 1, 1, 0.5, 0.0, omega1=1.5, omega2=0.8, big_omega1=3.8, big_omega2=3.1)
    cfg = SystemConfig("lambda", 1, 1, omega1=1.5, omega2=0.8, big_omega1=3.8, big_omega2=3.1)
    assert cfg.resonant


def test_hierarchy_warning():
    with pytest.warns(UserWarning, match="violate"):
        SystemConfig("cascade", 1, 1, omega1=3.0, omega2=1.0, big_omega1=5, big_omega2=0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        SystemConfig("cascade", 1, 1, omega1=1.3, omega2=1.1, big_omega1=1.5, big_omega2=0.9)
