"""Hybrid training of the photonic device by single-coordinate perturbation.

One iteration picks a random parameter ``k``, measures the mean trash/reference
overlap at ``p_k + a`` and ``p_k - a`` and moves ``p_k`` by
``(b / a) * (x_plus - x_minus)``. Once ``warmup`` iterations have passed, the
mean cost of every block of ``patience`` iterations is compared with the
previous block; if it did not drop by more than ``stall_tol`` both step sizes
shrink (``a /= 1.2``, ``b /= 1.1``). Training ends after ``max_outer`` such
anneal events or ``max_iters`` iterations.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from . import qlin
from .photonic import DeviceParams, device_unitary_from_array
from .qstate import Ensemble

N_PARAMS = 16
A_DECAY = 1.2
B_DECAY = 1.1


@dataclass(frozen=True)
class TrainConfig:
    a: float = 0.3
    b: float = 0.5
    max_outer: int = 10
    patience: int = 10
    stall_tol: float = 1e-4
    max_iters: int = 1000
    warmup: int = 500
    shots: int | None = None  # None = exact overlaps
    seed: int = 0
    init_params: DeviceParams | None = None

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("a and b must be positive")
        if self.patience < 1 or self.max_outer < 1 or self.max_iters < 1:
            raise ValueError("patience, max_outer and max_iters must be >= 1")
        if self.shots is not None and self.shots < 1:
            raise ValueError("shots must be >= 1 (or None for exact mode)")


@dataclass(frozen=True)
class OverlapModel:
    """States, their weights and the trash projector each one is scored against.

    The score of a unitary is ``sum_i w_i <phi_i| U^dag P_i U |phi_i>``, where
    ``P_i`` projects the trash factor onto the target of state ``i``.
    """

    states: np.ndarray  # (m, N)
    weights: np.ndarray  # (m,)
    projectors: np.ndarray  # (m, N, N)

    def overlaps(self, u: np.ndarray) -> np.ndarray:
        out = self.states @ u.T  # row i = U phi_i
        proj = np.einsum("mij,mj->mi", self.projectors, out)
        return np.clip(np.sum(np.abs(proj) ** 2, axis=1), 0.0, 1.0)

    def mean_overlap(self, u: np.ndarray, shots: int | None = None, rng=None) -> float:
        p = self.overlaps(u)
        if shots is not None:
            p = np.array([sample_overlap(x, shots, rng) for x in p])
        return float(self.weights @ p)

    def exact_cost(self, u: np.ndarray) -> float:
        return float(1.0 - self.weights @ self.overlaps(u))


def trash_projector(target, dims: tuple[int, int], trash: int) -> np.ndarray:
    """|target><target| on the trash factor, identity on the other."""
    p = qlin.projector(target)
    eye = np.eye(dims[1 - trash])
    return qlin.tensor(p, eye) if trash == 0 else qlin.tensor(eye, p)


def autoencoder_model(e: Ensemble, ref) -> OverlapModel:
    ref = np.asarray(ref, dtype=complex).ravel()
    if ref.shape[0] != e.dim_trash:
        raise ValueError("reference state does not live on the trash factor")
    proj = trash_projector(ref, e.dims, e.trash)
    return OverlapModel(e.states, e.priors, np.broadcast_to(proj, (len(e.priors),) + proj.shape))


def discrimination_model(problem, dims, trash: int, target_a, target_b) -> OverlapModel:
    ta, tb = qlin.normalize(target_a), qlin.normalize(target_b)
    if abs(np.vdot(ta, tb)) > 1e-10:
        raise ValueError("targets must be orthogonal")
    pa, pb = trash_projector(ta, dims, trash), trash_projector(tb, dims, trash)
    states = np.vstack([problem.states_a, problem.states_b])
    weights = np.concatenate([problem.priors_a, problem.priors_b])
    projs = np.array([pa] * len(problem.priors_a) + [pb] * len(problem.priors_b))
    return OverlapModel(states, weights, projs)


def overlap_probability(u, state, ref, dims: tuple[int, int] = (2, 2), trash: int = 0) -> float:
    """<psi| Tr_latent(U |phi><phi| U^dag) |psi> for a single input state."""
    u = qlin.as_matrix(u)
    state = np.asarray(state, dtype=complex).ravel()
    ref = np.asarray(ref, dtype=complex).ravel()
    if u.shape != (state.shape[0],) * 2 or state.shape[0] != dims[0] * dims[1]:
        raise ValueError("unitary, state and dims disagree")
    if ref.shape[0] != dims[trash]:
        raise ValueError("reference state does not live on the trash factor")
    out = u @ state
    reduced = qlin.partial_trace(np.outer(out, out.conj()), dims, over=1 - trash)
    return float(np.clip(np.vdot(ref, reduced @ ref).real, 0.0, 1.0))


def sample_overlap(p: float, shots: int | None, rng: np.random.Generator) -> float:
    """Binomial estimate k/shots of a probability; ``shots=None`` returns ``p`` itself."""
    if shots is None:
        return float(p)
    if shots < 1:
        raise ValueError("shots must be >= 1")
    return rng.binomial(shots, min(max(p, 0.0), 1.0)) / shots


def spsa_iteration(params, k: int, a: float, b: float, model: OverlapModel, shots=None, rng=None):
    """One perturb-measure-update step on coordinate ``k``.

    Returns ``(new_params, x_plus, x_minus)``.
    """
    if not 0 <= k < len(params):
        raise ValueError(f"coordinate {k} out of range")
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    params = np.array(params, dtype=float)
    probe = params.copy()
    probe[k] += a
    x_plus = model.mean_overlap(device_unitary_from_array(probe), shots, rng)
    probe[k] = params[k] - a
    x_minus = model.mean_overlap(device_unitary_from_array(probe), shots, rng)
    params[k] += (b / a) * (x_plus - x_minus)
    return params, x_plus, x_minus


@dataclass
class TrainTrace:
    iteration: np.ndarray
    cost: np.ndarray
    a: np.ndarray
    b: np.ndarray
    k: np.ndarray
    final_params: DeviceParams
    final_cost: float
    seed: int
    anneal_iterations: list[int] = field(default_factory=list)

    def __len__(self):
        return len(self.iteration)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("iteration,cost,a,b,k\n")
        for row in zip(self.iteration, self.cost, self.a, self.b, self.k):
            buf.write(f"{row[0]},{row[1]:.17g},{row[2]:.17g},{row[3]:.17g},{row[4]}\n")
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "seed": self.seed,
            "iterations": len(self),
            "final_cost": self.final_cost,
            "final_params": self.final_params.to_dict(),
            "anneal_iterations": list(self.anneal_iterations),
        }


def run_training(cfg: TrainConfig, model: OverlapModel) -> TrainTrace:
    """Train against an arbitrary overlap model (autoencoder or discrimination)."""
    rng = np.random.default_rng(cfg.seed)
    if cfg.init_params is None:
        params = rng.uniform(0.0, 2 * np.pi, size=N_PARAMS)
    else:
        params = cfg.init_params.to_array()
    a, b = cfg.a, cfg.b
    costs, a_log, b_log, k_log = [], [], [], []
    anneals: list[int] = []
    block: list[float] = []
    prev_mean = None

    for it in range(cfg.max_iters):
        k = int(rng.integers(N_PARAMS))
        params, x_plus, x_minus = spsa_iteration(params, k, a, b, model, cfg.shots, rng)
        cost = min(max(1.0 - 0.5 * (x_plus + x_minus), 0.0), 1.0)
        costs.append(cost)
        a_log.append(a)
        b_log.append(b)
        k_log.append(k)

        if it < cfg.warmup:
            continue
        block.append(cost)
        if len(block) == cfg.patience:
            mean = float(np.mean(block))
            block = []
            if prev_mean is not None and mean >= prev_mean - cfg.stall_tol:
                a /= A_DECAY
                b /= B_DECAY
                anneals.append(it)
                if len(anneals) >= cfg.max_outer:
                    break
            prev_mean = mean

    final = DeviceParams.from_array(params)
    return TrainTrace(
        iteration=np.arange(len(costs)),
        cost=np.array(costs),
        a=np.array(a_log),
        b=np.array(b_log),
        k=np.array(k_log, dtype=int),
        final_params=final,
        final_cost=model.exact_cost(device_unitary_from_array(params)),
        seed=cfg.seed,
        anneal_iterations=anneals,
    )


def train(cfg: TrainConfig, e: Ensemble, ref) -> TrainTrace:
    return run_training(cfg, autoencoder_model(e, ref))


def train_discrimination(cfg: TrainConfig, problem, dims, trash: int, target_a, target_b) -> TrainTrace:
    return run_training(cfg, discrimination_model(problem, dims, trash, target_a, target_b))
