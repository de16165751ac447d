"""Compress two linearly independent two-qubit states into one qubit without loss.

Two states span a two-dimensional subspace, so they fit in a single latent
qubit. The analytic encoder rotates the ensemble density into its eigenbasis
and parks the trash qubit in the reference state.
"""

import numpy as np

from qautoenc import qlin
from qautoenc.encoder import infidelity_cost, perfect_encoder
from qautoenc.qstate import Ensemble, ensemble_density, two_qubit_state

rh = two_qubit_state({"RH": 1})
lv = two_qubit_state({"LV": 1})
mixed = two_qubit_state({"RH": np.sqrt(2) / 4, "RV": np.sqrt(2) / 4, "LV": np.sqrt(3) / 2})

for label, states, trash in (("{RH, LV}, drop path", [rh, lv], "path"),
                             ("{mixed, LV}, drop polarization", [mixed, lv], "polarization")):
    e = Ensemble.uniform(states, trash=trash)
    sol = perfect_encoder(e, ref=[1, 0])
    print(f"{label:34s} rank={sol.rank_R} latent={sol.latent_dim_NB} cost={sol.achieved_cost:.1e}")

# Three orthogonal states cannot fit: the cost left over is the eigenvalue mass
# that does not fit in the latent space.
e = Ensemble.uniform(np.eye(4)[:3])
sol = perfect_encoder(e, ref=[1, 0])
w = qlin.herm_eig(ensemble_density(e)).eigenvalues
print(f"three orthogonal states: lossless={sol.lossless} cost={sol.achieved_cost:.4f} (1 - w1 - w2 = {1 - w[0] - w[1]:.4f})")

# A random unitary does much worse than the analytic one.
rng = np.random.default_rng(0)
e = Ensemble.uniform([rh, lv], trash="path")
print(f"random unitary on {{RH, LV}}: cost={infidelity_cost(qlin.random_unitary(4, rng), e, [1, 0]):.3f}")
