"""Minimum-error discrimination between two weighted groups of pure states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import qlin


@dataclass(frozen=True)
class DiscriminationProblem:
    """Two groups of pure states with joint priors summing to one."""

    states_a: np.ndarray
    priors_a: np.ndarray
    states_b: np.ndarray
    priors_b: np.ndarray

    def __post_init__(self):
        sa = np.atleast_2d(np.asarray(self.states_a, dtype=complex))
        sb = np.atleast_2d(np.asarray(self.states_b, dtype=complex))
        pa = np.asarray(self.priors_a, dtype=float).ravel()
        pb = np.asarray(self.priors_b, dtype=float).ravel()
        if sa.size == 0 or sb.size == 0:
            raise ValueError("problem: both groups need at least one state")
        if sa.shape[1] != sb.shape[1]:
            raise ValueError("problem: groups live in different dimensions")
        if pa.shape[0] != sa.shape[0] or pb.shape[0] != sb.shape[0]:
            raise ValueError("problem: one prior per state required")
        if np.any(pa < 0) or np.any(pb < 0) or abs(pa.sum() + pb.sum() - 1.0) > qlin.TOL.norm:
            raise ValueError("problem: priors must be non-negative and sum to 1")
        for s in (sa, sb):
            if np.any(np.abs(np.linalg.norm(s, axis=1) - 1.0) > qlin.TOL.norm):
                raise ValueError("problem: states must be unit norm")
        for name, v in (("states_a", sa), ("states_b", sb), ("priors_a", pa), ("priors_b", pb)):
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    @classmethod
    def from_groups(cls, group_a: Sequence[tuple], group_b: Sequence[tuple]) -> "DiscriminationProblem":
        """Build from ``[(state, prior), ...]`` lists; states are normalized."""
        sa = [qlin.normalize(s) for s, _ in group_a]
        sb = [qlin.normalize(s) for s, _ in group_b]
        return cls(np.array(sa), [p for _, p in group_a], np.array(sb), [p for _, p in group_b])

    @property
    def dim(self) -> int:
        return self.states_a.shape[1]

    def group_densities(self) -> tuple[np.ndarray, np.ndarray]:
        """Unnormalized (prior-weighted) group operators sum_i p_i |psi_i><psi_i|."""
        da = np.einsum("i,ij,ik->jk", self.priors_a, self.states_a, self.states_a.conj())
        db = np.einsum("i,ij,ik->jk", self.priors_b, self.states_b, self.states_b.conj())
        return da, db

    def decision_operator(self) -> np.ndarray:
        da, db = self.group_densities()
        return da - db

    def embed(self, isometry) -> "DiscriminationProblem":
        """Map every state through ``isometry`` (columns = image of each basis vector)."""
        v = np.asarray(isometry, dtype=complex)
        return DiscriminationProblem(self.states_a @ v.T, self.priors_a, self.states_b @ v.T, self.priors_b)


@dataclass(frozen=True)
class HelstromResult:
    p_error: float
    projector_a: np.ndarray
    projector_b: np.ndarray


def helstrom_bound(p: DiscriminationProblem) -> HelstromResult:
    """Optimal two-outcome measurement: project onto the positive eigenspace of the decision operator.

    Zero eigenvalues are assigned to the group-b outcome.
    """
    m = p.decision_operator()
    w, v = qlin.herm_eig(m)
    pos = v[:, w > 0]
    proj_a = pos @ qlin.dagger(pos)
    proj_b = np.eye(p.dim) - proj_a
    p_err = float(p.priors_a.sum() - np.sum(w[w > 0]))
    return HelstromResult(p_err, proj_a, proj_b)


def classification_error(p: DiscriminationProblem, proj_a, proj_b) -> float:
    """Exact misclassification probability of the measurement {proj_a, proj_b}."""
    da, db = p.group_densities()
    return float(np.trace(da @ proj_b).real + np.trace(db @ proj_a).real)


def symmetric_family(theta1: float, theta2: float, priors=(0.25, 0.25, 0.25, 0.25)) -> DiscriminationProblem:
    """Groups {cos t|0> + sin t|1>} vs their mirror images {cos t|0> - sin t|1>}, t in (theta1, theta2).

    ``priors`` is ``(P_a1, P_a2, P_b1, P_b2)``.
    """
    def st(t, sign):
        return np.array([np.cos(t), sign * np.sin(t)], dtype=complex)

    pa1, pa2, pb1, pb2 = priors
    return DiscriminationProblem(
        np.array([st(theta1, 1), st(theta2, 1)]), [pa1, pa2],
        np.array([st(theta1, -1), st(theta2, -1)]), [pb1, pb2],
    )


def closed_form_radicand(theta1: float, theta2: float, priors=(0.25, 0.25, 0.25, 0.25)) -> float:
    """Expression under the square root of the symmetric-family eigenvalues, written with overlaps."""
    pa1, pa2, pb1, pb2 = priors
    ov_a1b1 = np.cos(2 * theta1) ** 2
    ov_a2b2 = np.cos(2 * theta2) ** 2
    ov_a1a2 = np.cos(theta1 - theta2) ** 2
    ov_a1b2 = np.cos(theta1 + theta2) ** 2
    c, d = pa1 + pb1, pa2 + pb2
    return float(
        1
        - 4 * pa1 * pb1 * ov_a1b1
        - 4 * pa2 * pb2 * ov_a2b2
        + 2 * (pa1 * pa2 + pb1 * pb2) * (2 * ov_a1a2 - 1)
        - 2 * (pa2 * pb1 + pa1 * pb2) * (2 * ov_a1b2 - 1)
        - 2 * c * d
    )


def closed_form_perror(theta1: float, theta2: float, priors=(0.25, 0.25, 0.25, 0.25)) -> float:
    """Minimum error for the mirror-symmetric family from its 2x2 eigenvalues in closed form.

    The two eigenvalues of the decision operator are ``(A + B ± sqrt(r)) / 2``
    with ``A + B = P_a - P_b``; the error is ``P_a`` minus the positive ones.
    With both signs present this reduces to ``(1 - sqrt(r)) / 2``.
    """
    pa1, pa2, pb1, pb2 = priors
    r = max(closed_form_radicand(theta1, theta2, priors), 0.0)
    s = (pa1 - pb1) + (pa2 - pb2)
    lam = 0.5 * (s + np.sqrt(r)), 0.5 * (s - np.sqrt(r))
    return float(pa1 + pa2 - sum(x for x in lam if x > 0))


def closed_form_perror_equal(theta1: float, theta2: float) -> float:
    """Equal-prior special case written directly in state overlaps."""
    a1 = np.array([np.cos(theta1), np.sin(theta1)])
    a2 = np.array([np.cos(theta2), np.sin(theta2)])
    b1 = np.array([np.cos(theta1), -np.sin(theta1)])
    b2 = np.array([np.cos(theta2), -np.sin(theta2)])
    ov = lambda x, y: abs(np.dot(x, y)) ** 2  # noqa: E731
    r = 2 - ov(a1, b1) - ov(a2, b2) + 2 * ov(a1, a2) - 2 * ov(a1, b2)
    return float(0.5 * (1 - 0.5 * np.sqrt(max(r, 0.0))))


def optimal_symmetric_measurement() -> tuple[np.ndarray, np.ndarray]:
    """(|0> + |1>)/sqrt2 for group a and (|0> - |1>)/sqrt2 for group b."""
    s = 1 / np.sqrt(2)
    return np.array([s, s], dtype=complex), np.array([s, -s], dtype=complex)


def group_encoding_cost(u, p: DiscriminationProblem, dims: tuple[int, int], trash: int, target_a, target_b) -> float:
    """Infidelity of steering group a to ``target_a`` and group b to ``target_b`` on the trash factor.

    Equals the error of the measurement that reads the trash factor in the
    ``{target_a, target_b}`` basis after applying ``u``, so it is never below
    the Helstrom bound.
    """
    ta = qlin.normalize(target_a)
    tb = qlin.normalize(target_b)
    if abs(np.vdot(ta, tb)) > 1e-10:
        raise ValueError("targets must be orthogonal")
    if ta.shape[0] != dims[trash] or tb.shape[0] != dims[trash]:
        raise ValueError("targets must live on the trash factor")
    u = qlin.as_matrix(u)
    if u.shape != (p.dim, p.dim) or p.dim != dims[0] * dims[1]:
        raise ValueError("unitary, problem and dims disagree")
    da, db = p.group_densities()
    latent = 1 - trash
    ra = qlin.partial_trace(u @ da @ qlin.dagger(u), dims, over=latent)
    rb = qlin.partial_trace(u @ db @ qlin.dagger(u), dims, over=latent)
    return float(1.0 - np.vdot(ta, ra @ ta).real - np.vdot(tb, rb @ tb).real)


def theta_state(theta: float, basis: tuple[int, int], dim: int) -> np.ndarray:
    """cos(theta)|basis[0]> + sin(theta)|basis[1]> in a ``dim``-dimensional space."""
    v = np.zeros(dim, dtype=complex)
    v[basis[0]] += np.cos(theta)
    v[basis[1]] += np.sin(theta)
    return v


def interval_problem(
    range_a: tuple[float, float],
    range_b: tuple[float, float],
    basis: tuple[int, int] = (0, 1),
    dim: int = 2,
    samples: int = 2,
) -> DiscriminationProblem:
    """Groups of theta-states sampled uniformly over two angle intervals (radians).

    ``samples=2`` keeps just the interval endpoints; larger values approximate
    the interval-averaged group densities. Each group carries total prior 1/2.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    groups = []
    for lo, hi in (range_a, range_b):
        thetas = [0.5 * (lo + hi)] if samples == 1 else np.linspace(lo, hi, samples)
        groups.append(np.array([theta_state(t, basis, dim) for t in thetas]))
    sa, sb = groups
    return DiscriminationProblem(sa, np.full(len(sa), 0.5 / len(sa)), sb, np.full(len(sb), 0.5 / len(sb)))
