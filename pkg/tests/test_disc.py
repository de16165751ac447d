import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qautoenc import qlin
from qautoenc.disc import (
    DiscriminationProblem,
    classification_error,
    closed_form_perror,
    closed_form_perror_equal,
    group_encoding_cost,
    helstrom_bound,
    interval_problem,
    optimal_symmetric_measurement,
    symmetric_family,
    theta_state,
)
from qautoenc.photonic import device_unitary_from_array

# explicit 2x2 eigendecomposition of (rho_a - rho_b)/2 for the endpoint groups
# (+-4 deg vs 60 +- 4 deg, and +-2 deg vs 30 +- 2 deg),
# evaluated in plain float math and frozen
FIG5A_BOUND = 0.0712013479566227
FIG5B_BOUND = 0.25060898743504395


def st2(deg):
    t = math.radians(deg)
    return np.array([math.cos(t), math.sin(t)], dtype=complex)


def test_orthogonal_and_identical_groups():
    p = DiscriminationProblem.from_groups([([1, 0], 0.5)], [([0, 1], 0.5)])
    res = helstrom_bound(p)
    assert res.p_error == pytest.approx(0, abs=1e-15)
    assert_allclose(res.projector_a, np.diag([1, 0]), atol=1e-15)
    s = qlin.random_state(2, np.random.default_rng(0))
    same = DiscriminationProblem.from_groups([(s, 0.25), (s, 0.25)], [(s, 0.25), (s, 0.25)])
    assert helstrom_bound(same).p_error == pytest.approx(0.5, abs=1e-12)


def test_fig5a_bound():
    p = DiscriminationProblem.from_groups([(st2(4), 0.25), (st2(-4), 0.25)], [(st2(56), 0.25), (st2(64), 0.25)])
    res = helstrom_bound(p)
    assert res.p_error == pytest.approx(FIG5A_BOUND, abs=1e-12)
    assert classification_error(p, res.projector_a, res.projector_b) == pytest.approx(FIG5A_BOUND, abs=1e-12)
    assert helstrom_bound(interval_problem(np.deg2rad([-4, 4]), np.deg2rad([56, 64]))).p_error == pytest.approx(
        FIG5A_BOUND, abs=1e-12
    )


def test_fig5b_bound():
    p = interval_problem(np.deg2rad([-2, 2]), np.deg2rad([28, 32]))
    assert helstrom_bound(p).p_error == pytest.approx(FIG5B_BOUND, abs=1e-12)


def test_helstrom_is_optimal_over_random_measurements(rng):
    for _ in range(100):
        sa = [qlin.random_state(3, rng) for _ in range(2)]
        sb = [qlin.random_state(3, rng) for _ in range(2)]
        pri = rng.dirichlet(np.ones(4))
        p = DiscriminationProblem(np.array(sa), pri[:2], np.array(sb), pri[2:])
        best = helstrom_bound(p).p_error
        assert 0 <= best <= min(pri[:2].sum(), pri[2:].sum()) + 1e-12
        u = qlin.random_unitary(3, rng)
        k = int(rng.integers(0, 4))
        proj = u[:, :k] @ u[:, :k].conj().T
        assert classification_error(p, proj, np.eye(3) - proj) >= best - 1e-12


def test_closed_form_matches_general_solver(rng):
    for _ in range(500):
        t1, t2 = rng.uniform(-np.pi, np.pi, 2)
        general = helstrom_bound(symmetric_family(t1, t2)).p_error
        assert closed_form_perror(t1, t2) == pytest.approx(general, abs=1e-10)
        assert closed_form_perror_equal(t1, t2) == pytest.approx(general, abs=1e-10)


def test_closed_form_unequal_priors(rng):
    for _ in range(500):
        t1, t2 = rng.uniform(-np.pi, np.pi, 2)
        pri = tuple(rng.dirichlet(np.ones(4)))
        general = helstrom_bound(symmetric_family(t1, t2, pri)).p_error
        assert closed_form_perror(t1, t2, pri) == pytest.approx(general, abs=1e-10)


def test_closed_form_special_cases():
    for t1, t2 in ((math.pi / 4, -math.pi / 4), (math.pi / 4, math.pi / 4)):
        assert closed_form_perror(t1, t2) == pytest.approx(helstrom_bound(symmetric_family(t1, t2)).p_error, abs=1e-12)
    assert closed_form_perror(math.pi / 2, 0) == pytest.approx(0.5, abs=1e-12)
    assert closed_form_perror(math.pi / 4, math.pi / 4) == pytest.approx(0, abs=1e-12)


def test_optimal_symmetric_measurement(rng):
    phi_a, phi_b = optimal_symmetric_measurement()
    pa, pb = qlin.projector(phi_a), qlin.projector(phi_b)
    assert_allclose(pa + pb, np.eye(2), atol=1e-15)
    # mirror-symmetric groups that stay in the upper half-plane
    for _ in range(200):
        t1, t2 = rng.uniform(0, np.pi / 2, 2)
        p = symmetric_family(t1, t2)
        assert classification_error(p, pa, pb) == pytest.approx(closed_form_perror(t1, t2), abs=1e-10)
    p = symmetric_family(math.radians(4), math.radians(-4))
    direct = sum(0.25 * abs(np.vdot(phi_b, s)) ** 2 for s in p.states_a) + sum(
        0.25 * abs(np.vdot(phi_a, s)) ** 2 for s in p.states_b
    )
    assert classification_error(p, pa, pb) == pytest.approx(direct, abs=1e-15)


def test_group_encoding_cost_examples(rng):
    p = DiscriminationProblem.from_groups([([1, 0, 0, 0], 0.5)], [([0, 0, 1, 0], 0.5)])
    assert group_encoding_cost(np.eye(4), p, (2, 2), 0, [1, 0], [0, 1]) == pytest.approx(0)
    s = qlin.random_state(4, rng)
    same = DiscriminationProblem.from_groups([(s, 0.5)], [(s, 0.5)])
    for _ in range(50):
        assert group_encoding_cost(qlin.random_unitary(4, rng), same, (2, 2), 0, [1, 0], [0, 1]) >= 0.5 - 1e-12
    with pytest.raises(ValueError):
        group_encoding_cost(np.eye(4), p, (2, 2), 0, [1, 0], [1, 1])


def test_group_encoding_cost_never_beats_bound(rng):
    p = interval_problem(np.deg2rad([-4, 4]), np.deg2rad([56, 64]), basis=(0, 1), dim=4)
    for trial in range(300):
        u = device_unitary_from_array(rng.uniform(0, 2 * np.pi, 16))
        ta = qlin.random_state(2, rng)
        tb = np.array([-ta[1].conj(), ta[0].conj()])
        assert group_encoding_cost(u, p, (2, 2), trial % 2, ta, tb) >= FIG5A_BOUND - 1e-12


def test_theta_state_and_validation():
    assert_allclose(theta_state(math.pi / 2, (0, 3), 4), [0, 0, 0, 1], atol=1e-15)
    with pytest.raises(ValueError):
        DiscriminationProblem(np.array([[1, 0]]), [0.6], np.array([[0, 1]]), [0.6])
    with pytest.raises(ValueError):
        DiscriminationProblem(np.array([[1, 0]]), [0.5], np.array([[0, 1, 0]]), [0.5])
    with pytest.raises(ValueError):
        interval_problem((0, 1), (1, 2), samples=0)
    p = interval_problem((0, 1), (1, 2), samples=5)
    assert p.priors_a.sum() == pytest.approx(0.5) and len(p.priors_b) == 5
