"""Autoencoder cost, the eigenvalue fidelity bound and the analytic lossless encoder."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qlin
from .qstate import Ensemble, ensemble_density


@dataclass(frozen=True)
class EncoderSolution:
    unitary: np.ndarray
    achieved_cost: float
    rank_R: int
    latent_dim_NB: int
    lossless: bool


def _check_reference(ref, dim_trash: int) -> np.ndarray:
    ref = np.asarray(ref, dtype=complex).ravel()
    if ref.shape[0] != dim_trash:
        raise ValueError(f"reference state has dim {ref.shape[0]}, trash space has dim {dim_trash}")
    if abs(np.linalg.norm(ref) - 1.0) > qlin.TOL.norm:
        raise ValueError("reference state must be unit norm")
    return ref


def trash_state(u, e: Ensemble) -> np.ndarray:
    """Reduced state of the trash factor after applying ``u`` to the ensemble."""
    u = qlin.as_matrix(u)
    if u.shape != (e.dim, e.dim):
        raise ValueError(f"unitary of shape {u.shape} does not act on dim {e.dim}")
    rho = u @ ensemble_density(e) @ qlin.dagger(u)
    return qlin.partial_trace(rho, e.dims, over=e.latent)


def infidelity_cost(u, e: Ensemble, ref) -> float:
    """J(U) = 1 - <psi| Tr_latent(U rho U^dag) |psi>."""
    ref = _check_reference(ref, e.dim_trash)
    fid = np.vdot(ref, trash_state(u, e) @ ref).real
    return float(max(1.0 - fid, 0.0))


def max_fidelity_bound(rho) -> float:
    """Largest ``<psi| U rho U^dag |psi>`` over unitaries ``U``, with ``psi`` pure on the full space.

    This is ``lambda_max(rho)``. It does not bound the fidelity of the reduced
    trash state; see :func:`max_trash_fidelity` for that.
    """
    return float(qlin.herm_eig(rho).eigenvalues[0])


def max_trash_fidelity(rho, dim_latent: int) -> float:
    """Largest ``<psi| Tr_latent(U rho U^dag) |psi>`` over unitaries: the top ``dim_latent`` eigenvalues summed."""
    w = qlin.herm_eig(rho).eigenvalues
    return float(min(np.sum(w[:dim_latent]), 1.0))


def align_unitary(target, source) -> np.ndarray:
    """Unitary ``W V^dag`` taking ``source`` to ``target`` up to a global phase.

    ``W`` and ``V`` are the eigenvector frames of the rank-one projectors onto
    ``target`` and ``source``; their first columns span the two states and the
    remaining columns are an arbitrary orthonormal completion.
    """
    target = qlin.normalize(target)
    source = qlin.normalize(source)
    if target.shape != source.shape:
        raise ValueError("align_unitary: states have different dimensions")
    w = qlin.herm_eig(qlin.projector(target)).eigenvectors
    v = qlin.herm_eig(qlin.projector(source)).eigenvectors
    return w @ qlin.dagger(v)


def _support_rank(e: Ensemble, tol: float) -> int:
    return qlin.max_lin_independent(e.states[e.priors > 0], tol)


def compressible(e: Ensemble, tol: float = qlin.TOL.rank) -> bool:
    return _support_rank(e, tol) <= e.dim_latent


def perfect_encoder(e: Ensemble, ref, tol: float = qlin.TOL.rank) -> EncoderSolution:
    """Build U = (U_A ⊗ I_B) U_AB from the eigenbasis of the ensemble density.

    ``U_AB`` rotates the density into its eigenbasis with eigenvalues in
    descending order, so the largest ``dim_latent`` eigenvalues all sit in
    trash index 0. ``U_A`` then rotates trash ``|0>`` onto the reference
    state. When the ensemble is not compressible the construction is still
    returned together with the cost it actually achieves.
    """
    ref = _check_reference(ref, e.dim_trash)
    d_trash, d_latent = e.dim_trash, e.dim_latent

    # work with the trash factor first, then permute back to storage order
    perm = np.eye(e.dim, dtype=complex) if e.trash == 0 else qlin.swap_permutation(e.dims)
    rho = perm @ ensemble_density(e) @ qlin.dagger(perm)

    u_ab = qlin.dagger(qlin.herm_eig(rho).eigenvectors)
    u_a = align_unitary(ref, qlin.ket(0, d_trash))
    u = qlin.tensor(u_a, np.eye(d_latent)) @ u_ab
    u = qlin.dagger(perm) @ u @ perm

    rank = _support_rank(e, tol)
    return EncoderSolution(
        unitary=u,
        achieved_cost=infidelity_cost(u, e, ref),
        rank_R=rank,
        latent_dim_NB=d_latent,
        lossless=rank <= d_latent,
    )
