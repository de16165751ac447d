import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from qautoenc import qlin
from qautoenc.qstate import (
    AlphaTriple,
    Ensemble,
    alpha_state,
    ensemble_density,
    index_to_label,
    label_to_index,
    sample_alpha,
    sample_independent_alpha_states,
    trash_index,
    two_qubit_state,
)

# amplitudes for the first state of the two-state alpha example, evaluated in
# plain float math from the cos/sin parameterization and frozen here
ALPHA_EXAMPLE = [-0.04611882055522983, 0.023683338337465474, 0.009004123454222787, 0.9986145801241882]


def test_labels_roundtrip():
    assert [label_to_index(x) for x in ("RH", "RV", "LH", "LV")] == [0, 1, 2, 3]
    assert index_to_label(3) == "LV"
    with pytest.raises(ValueError):
        label_to_index("XX")


def test_two_qubit_state_examples():
    assert_allclose(two_qubit_state({"RH": 1}), [1, 0, 0, 0])
    r2 = math.sqrt(2) / 4
    assert_allclose(two_qubit_state({"RH": r2, "RV": r2, "LV": math.sqrt(3) / 2}),
                    [0.35355339, 0.35355339, 0, 0.8660254], atol=1e-8)
    assert_allclose(two_qubit_state({"RH": 1, "LV": 1}), np.array([1, 0, 0, 1]) / math.sqrt(2))
    with pytest.raises(ValueError):
        two_qubit_state({"RH": 0})


def test_alpha_state_examples():
    assert_allclose(alpha_state(AlphaTriple(0, 0, 1.3)), [0, 1, 0, 0], atol=1e-15)
    assert_allclose(alpha_state(AlphaTriple(math.pi / 2, 0.7, 0)), [0, 0, 0, 1], atol=1e-15)
    s = alpha_state(AlphaTriple(*(math.pi * x for x in (0.51651, 0.65101, 0.00287))))
    assert_allclose(s, ALPHA_EXAMPLE, atol=1e-14)


def test_alpha_triple_domain():
    with pytest.raises(ValueError):
        AlphaTriple(-0.1, 0, 0)
    with pytest.raises(ValueError):
        AlphaTriple(0, 0, 3.2)


@given(st.tuples(*(st.floats(0, math.pi) for _ in range(3))))
@settings(max_examples=200, deadline=None)
def test_alpha_state_unit_norm(angles):
    assert abs(np.linalg.norm(alpha_state(AlphaTriple(*angles))) - 1) <= 1e-12


def test_sample_alpha_determinism_and_stats():
    a = np.random.default_rng(0)
    b = np.random.default_rng(0)
    first, second = sample_alpha(a), sample_alpha(a)
    assert first != second
    assert (first, second) == (sample_alpha(b), sample_alpha(b))
    rng = np.random.default_rng(1)
    draws = np.array([[t.a1, t.a2, t.a3] for t in (sample_alpha(rng) for _ in range(10_000))])
    assert np.all(np.abs(draws.mean(axis=0) - math.pi / 2) <= 0.02)
    pair = sample_independent_alpha_states(2, rng)
    assert qlin.max_lin_independent(pair) == 2


def test_ensemble_density_examples():
    e = Ensemble.uniform([[1, 0, 0, 0], [0, 0, 0, 1]])
    assert_allclose(ensemble_density(e), np.diag([0.5, 0, 0, 0.5]))
    psi = qlin.random_state(4, np.random.default_rng(3))
    rho = ensemble_density(Ensemble.uniform([psi]))
    assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-12)


def test_ensemble_density_is_density(rng):
    for _ in range(200):
        n = int(rng.integers(1, 6))
        pri = rng.dirichlet(np.ones(n))
        e = Ensemble(np.array([qlin.random_state(4, rng) for _ in range(n)]), pri)
        assert qlin.is_density(ensemble_density(e))


def test_ensemble_validation():
    with pytest.raises(ValueError, match="ensemble: empty"):
        Ensemble(np.zeros((0, 4)), [])
    with pytest.raises(ValueError):
        Ensemble(np.array([[1, 0, 0, 0]]), [0.5])
    with pytest.raises(ValueError):
        Ensemble(np.array([[1, 1, 0, 0]]), [1.0])
    with pytest.raises(ValueError):
        Ensemble(np.array([[1, 0, 0]]), [1.0])
    with pytest.raises(ValueError):
        trash_index("spin")
    e = Ensemble.uniform([[1, 0, 0, 0]], trash="polarization")
    assert (e.trash, e.latent, e.dim_trash, e.dim_latent) == (1, 0, 2, 2)
    with pytest.raises(ValueError):
        e.states[0, 0] = 2
