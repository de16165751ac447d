"""Dense complex linear algebra for small quantum systems.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; pure
states are 1-D arrays. Bipartite operators use the subsystem-major index
convention: for a split ``(dim0, dim1)`` the global index is ``i0 * dim1 + i1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    unitary: float = 1e-12
    hermitian: float = 1e-12
    trace: float = 1e-12
    psd: float = 1e-10
    herm_input: float = 1e-10
    norm: float = 1e-12
    rank: float = 1e-8


TOL = Tolerances()


class EigenResult(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def is_unitary(u, tol: float = TOL.unitary) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return float(np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0])))) <= tol


def is_hermitian(m, tol: float = TOL.hermitian) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m - dagger(m)))) <= tol


def is_density(m, tol: Tolerances = TOL) -> bool:
    if not is_hermitian(m, tol.hermitian):
        return False
    m = np.asarray(m, dtype=complex)
    if abs(np.trace(m) - 1.0) > tol.trace:
        return False
    return float(np.linalg.eigvalsh(0.5 * (m + dagger(m)))[0]) >= -tol.psd


def normalize(v) -> np.ndarray:
    """Return ``v`` scaled to unit norm; raises on the zero vector."""
    v = np.asarray(v, dtype=complex).ravel()
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / n


def ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())


def tensor(*ops) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors), left factor major."""
    if not ops:
        raise ValueError("tensor needs at least one operand")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


_SUBSYSTEM_TAGS = {"A": 0, "B": 1, 0: 0, 1: 1}


def _subsystem(over) -> int:
    try:
        return _SUBSYSTEM_TAGS[over]
    except (KeyError, TypeError):
        raise ValueError(f"unknown subsystem tag {over!r}; use 'A'/'B' or 0/1") from None


def partial_trace(m, dims: tuple[int, int], over="B") -> np.ndarray:
    """Trace out one factor of a bipartite operator.

    Parameters
    ----------
    m : array_like
        Square matrix on the ``dims[0] * dims[1]`` dimensional space.
    dims : (int, int)
        Dimensions of the first (``"A"``) and second (``"B"``) factor.
    over : {"A", "B", 0, 1}
        The factor that is traced out.

    Returns
    -------
    numpy.ndarray
        Reduced operator on the remaining factor.
    """
    m = as_matrix(m)
    d0, d1 = int(dims[0]), int(dims[1])
    if m.shape != (d0 * d1, d0 * d1):
        raise ValueError(f"matrix of shape {m.shape} does not match dims {dims}")
    t = m.reshape(d0, d1, d0, d1)
    if _subsystem(over) == 1:
        return np.einsum("ajbj->ab", t)
    return np.einsum("jajb->ab", t)


def swap_permutation(dims: tuple[int, int]) -> np.ndarray:
    """Permutation matrix P with P (x ⊗ y) = y ⊗ x for x, y of sizes ``dims``."""
    d0, d1 = dims
    p = np.zeros((d0 * d1, d0 * d1), dtype=complex)
    for i in range(d0):
        for j in range(d1):
            p[j * d0 + i, i * d1 + j] = 1.0
    return p


def herm_eig(m) -> EigenResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues in descending order."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("herm_eig needs a square matrix")
    if float(np.max(np.abs(m - dagger(m)))) > TOL.herm_input:
        raise ValueError("herm_eig needs a Hermitian matrix")
    w, v = np.linalg.eigh(0.5 * (m + dagger(m)))
    return EigenResult(w[::-1].copy(), v[:, ::-1].copy())


def max_lin_independent(states: Sequence, tol: float = TOL.rank) -> int:
    """Largest number of linearly independent vectors among ``states``.

    Counts singular values of the stacked state matrix above ``tol`` times the
    largest singular value.
    """
    if len(states) == 0:
        raise ValueError("max_lin_independent needs at least one state")
    a = np.array([np.asarray(s, dtype=complex).ravel() for s in states])
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def trace_norm(m) -> float:
    m = as_matrix(m)
    if is_hermitian(m, TOL.herm_input):
        return float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (m + dagger(m))))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def matrix_sqrt_psd(m) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    Negative eigenvalues down to ``-TOL.psd`` are clipped to zero, as are
    eigenvalues within the rounding floor ``64 * eps * max|lambda|``; left in,
    their square roots would add O(1e-8) spurious weight for rank-deficient
    inputs.
    """
    w, v = herm_eig(m)
    if w[-1] < -TOL.psd:
        raise ValueError(f"matrix is not PSD (min eigenvalue {w[-1]:.3e})")
    floor = 64 * np.finfo(float).eps * max(abs(w[0]), abs(w[-1]))
    w = np.where(w > floor, w, 0.0)
    return (v * np.sqrt(w)) @ dagger(v)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    return normalize(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    g = rng.standard_normal((dim, rank or dim)) + 1j * rng.standard_normal((dim, rank or dim))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real


# Text exchange format: first line "rows cols", then row-major "re im" pairs.

def format_matrix(m) -> str:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    for row in m:
        lines.append(" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text is missing the 'rows cols' header")
    rows, cols = int(tokens[0]), int(tokens[1])
    values = [float(t) for t in tokens[2:]]
    if len(values) != 2 * rows * cols:
        raise ValueError(f"expected {2 * rows * cols} numbers for a {rows}x{cols} matrix, got {len(values)}")
    pairs = np.array(values).reshape(rows * cols, 2)
    return (pairs[:, 0] + 1j * pairs[:, 1]).reshape(rows, cols)


def save_matrix(path, m) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(m))


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return parse_matrix(fh.read())


def direct_sum(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=complex)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out
