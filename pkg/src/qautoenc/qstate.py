"""Two-qubit path/polarization states, the random alpha-state family and ensembles.

The two qubits are ordered path first: ``|R> = |0>``, ``|L> = |1>`` on the
path qubit and ``|H> = |0>``, ``|V> = |1>`` on the polarization qubit, so
``RH, RV, LH, LV`` are the basis indices ``0, 1, 2, 3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import qlin

BASIS_LABELS = ("RH", "RV", "LH", "LV")
BASIS_INDEX = {label: i for i, label in enumerate(BASIS_LABELS)}

# qubit index of each named degree of freedom
QUBITS = {"path": 0, "polarization": 1}


def label_to_index(label: str) -> int:
    try:
        return BASIS_INDEX[label.upper()]
    except KeyError:
        raise ValueError(f"unknown basis label {label!r}; expected one of {BASIS_LABELS}") from None


def index_to_label(index: int) -> str:
    return BASIS_LABELS[index]


def two_qubit_state(amplitudes: Mapping[str, complex]) -> np.ndarray:
    """Normalized state from amplitudes keyed by basis label.

    >>> two_qubit_state({"RH": 1, "LV": 1}).round(4).real
    array([0.7071, 0.    , 0.    , 0.7071])
    """
    v = np.zeros(4, dtype=complex)
    for label, amp in amplitudes.items():
        v[label_to_index(label)] += amp
    if not np.any(v):
        raise ValueError("two_qubit_state: all amplitudes are zero")
    return qlin.normalize(v)


@dataclass(frozen=True)
class AlphaTriple:
    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        for name in ("a1", "a2", "a3"):
            value = getattr(self, name)
            if not 0.0 <= value <= np.pi:
                raise ValueError(f"{name}={value} outside [0, pi]")


def alpha_state(a: AlphaTriple) -> np.ndarray:
    """cos a1 sin a2 |00> + cos a1 cos a2 |01> + sin a1 sin a3 |10> + sin a1 cos a3 |11>."""
    c1, s1 = np.cos(a.a1), np.sin(a.a1)
    return np.array(
        [c1 * np.sin(a.a2), c1 * np.cos(a.a2), s1 * np.sin(a.a3), s1 * np.cos(a.a3)],
        dtype=complex,
    )


def sample_alpha(rng: np.random.Generator) -> AlphaTriple:
    a1, a2, a3 = rng.uniform(0.0, np.pi, size=3)
    return AlphaTriple(float(a1), float(a2), float(a3))


def sample_independent_alpha_states(n: int, rng: np.random.Generator, max_tries: int = 100) -> list[np.ndarray]:
    """Draw ``n`` alpha-states, redrawing in the (measure-zero) dependent case."""
    for _ in range(max_tries):
        states = [alpha_state(sample_alpha(rng)) for _ in range(n)]
        if qlin.max_lin_independent(states) == n:
            return states
    raise RuntimeError(f"could not draw {n} linearly independent alpha-states")


@dataclass(frozen=True)
class Ensemble:
    """Weighted set of pure states on a bipartite space.

    ``dims`` lists the factor dimensions in storage order and ``trash`` says
    which factor is discarded (0/1, or ``"path"``/``"polarization"`` for the
    photonic two-qubit layout); the other factor is the latent space.
    """

    states: np.ndarray
    priors: np.ndarray
    dims: tuple[int, int] = (2, 2)
    trash: int = 0

    def __post_init__(self):
        states = np.atleast_2d(np.asarray(self.states, dtype=complex))
        if states.shape[0] == 0 or states.size == 0:
            raise ValueError("ensemble: empty")
        priors = np.asarray(self.priors, dtype=float).ravel()
        if priors.shape[0] != states.shape[0]:
            raise ValueError(f"ensemble: {states.shape[0]} states but {priors.shape[0]} priors")
        if np.any(priors < 0) or abs(priors.sum() - 1.0) > qlin.TOL.norm:
            raise ValueError("ensemble: priors must be non-negative and sum to 1")
        if states.shape[1] != self.dims[0] * self.dims[1]:
            raise ValueError(f"ensemble: state dim {states.shape[1]} does not match dims {self.dims}")
        norms = np.linalg.norm(states, axis=1)
        if np.any(np.abs(norms - 1.0) > qlin.TOL.norm):
            raise ValueError("ensemble: states must be unit norm")
        trash = trash_index(self.trash)
        if trash not in (0, 1):
            raise ValueError("ensemble: trash must be 0 or 1")
        object.__setattr__(self, "trash", trash)
        states.setflags(write=False)
        priors.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "dims", (int(self.dims[0]), int(self.dims[1])))

    @classmethod
    def uniform(cls, states: Sequence, dims=(2, 2), trash=0) -> "Ensemble":
        states = [qlin.normalize(s) for s in states]
        if not states:
            raise ValueError("ensemble: empty")
        return cls(np.array(states), np.full(len(states), 1.0 / len(states)), dims, trash)

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]

    @property
    def dim_trash(self) -> int:
        return self.dims[self.trash]

    @property
    def dim_latent(self) -> int:
        return self.dims[1 - self.trash]

    @property
    def latent(self) -> int:
        return 1 - self.trash


def trash_index(trash: str | int) -> int:
    """Map ``"path"``/``"polarization"`` (or 0/1) to a qubit index."""
    if isinstance(trash, str):
        try:
            return QUBITS[trash]
        except KeyError:
            raise ValueError(f"trash must be 'path' or 'polarization', got {trash!r}") from None
    return int(trash)


def ensemble_density(e: Ensemble) -> np.ndarray:
    return np.einsum("i,ij,ik->jk", e.priors, e.states, e.states.conj())
