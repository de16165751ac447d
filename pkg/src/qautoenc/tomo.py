"""Process matrices of unitary channels in the Pauli operator basis."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import qlin

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliBasis:
    n_qubits: int
    labels: tuple[str, ...]
    operators: np.ndarray  # shape (4**n, 2**n, 2**n)

    def index(self, label: str) -> int:
        return self.labels.index(label)


@lru_cache(maxsize=None)
def pauli_basis(n: int = 2) -> PauliBasis:
    """All n-qubit Pauli words, ordered I, X, Y, Z per qubit with the leftmost qubit major."""
    if n < 1:
        raise ValueError("pauli_basis needs n >= 1")
    labels = tuple("".join(w) for w in itertools.product("IXYZ", repeat=n))
    ops = np.array([qlin.tensor(*(PAULI[c] for c in w)) for w in labels])
    ops.setflags(write=False)
    return PauliBasis(n, labels, ops)


@dataclass(frozen=True)
class ProcessMatrix:
    chi: np.ndarray
    basis: PauliBasis

    def apply(self, rho) -> np.ndarray:
        """Channel action rho -> sum_mn chi_mn E_m rho E_n^dag."""
        e = self.basis.operators
        return np.einsum("mn,mij,jk,nlk->il", self.chi, e, np.asarray(rho, dtype=complex), e.conj())


def pauli_coefficients(u) -> np.ndarray:
    """c_m = Tr(E_m^dag U) / 2^n."""
    u = qlin.as_matrix(u)
    n = int(round(np.log2(u.shape[0])))
    if 2**n != u.shape[0]:
        raise ValueError("unitary dimension must be a power of two")
    basis = pauli_basis(n)
    return np.einsum("mij,ij->m", basis.operators.conj(), u) / 2**n


def chi_of_unitary(u) -> ProcessMatrix:
    u = qlin.as_matrix(u)
    if not qlin.is_unitary(u, 1e-10):
        raise ValueError("chi_of_unitary needs a unitary")
    c = pauli_coefficients(u)
    n = int(round(np.log2(u.shape[0])))
    return ProcessMatrix(np.outer(c, c.conj()), pauli_basis(n))


def process_fidelity(chi_exp: ProcessMatrix | np.ndarray, chi_ideal: ProcessMatrix | np.ndarray) -> float:
    """Tr sqrt( sqrt(chi_exp) chi_ideal sqrt(chi_exp) )."""
    a = np.asarray(getattr(chi_exp, "chi", chi_exp), dtype=complex)
    b = np.asarray(getattr(chi_ideal, "chi", chi_ideal), dtype=complex)
    for name, m in (("chi_exp", a), ("chi_ideal", b)):
        if not qlin.is_hermitian(m, 1e-10):
            raise ValueError(f"{name} is not Hermitian")
    s = qlin.matrix_sqrt_psd(a)
    inner = s @ b @ s
    return float(np.trace(qlin.matrix_sqrt_psd(0.5 * (inner + qlin.dagger(inner)))).real)


def chi_csv(chi: ProcessMatrix, part: str = "real") -> str:
    """Real or imaginary part of chi as a labeled CSV grid."""
    values = chi.chi.real if part == "real" else chi.chi.imag
    labels = chi.basis.labels
    rows = ["," + ",".join(labels)]
    for label, row in zip(labels, values):
        rows.append(label + "," + ",".join(f"{x:.12g}" for x in row + 0.0))
    return "\n".join(rows) + "\n"
