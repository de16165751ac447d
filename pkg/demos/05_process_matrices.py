"""Process matrices of gates and what the fidelity between them measures."""

import numpy as np

from qautoenc import tomo
from qautoenc.photonic import GateName, gate_library

cnot = tomo.chi_of_unitary(gate_library(GateName.CNOT_PolCtrlPath))
labels = cnot.basis.labels
print("non-zero entries of chi(CNOT):")
for i, j in zip(*np.nonzero(np.abs(cnot.chi) > 1e-12)):
    print(f"  ({labels[i]}, {labels[j]}) {cnot.chi[i, j].real:+.2f}")

print("\nfidelity between gates:")
names = [GateName.Identity, GateName.CNOT_PolCtrlPath, GateName.CZ, GateName.SWAP]
chis = [tomo.chi_of_unitary(gate_library(g)) for g in names]
print(" " * 18 + "".join(f"{g.value[:10]:>12s}" for g in names))
for g, a in zip(names, chis):
    print(f"{g.value:18s}" + "".join(f"{tomo.process_fidelity(a, b):12.4f}" for b in chis))
