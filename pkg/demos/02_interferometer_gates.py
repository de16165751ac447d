"""Fit the 16 wave-plate and phase settings of the interferometer to textbook gates."""

import time

import numpy as np

from qautoenc import tomo
from qautoenc.photonic import GateName, device_unitary, gate_library, solve_device_params

for g in GateName:
    target = gate_library(g)
    t0 = time.perf_counter()
    params, residual = solve_device_params(target, seeds=8, rng=np.random.default_rng(0))
    fid = tomo.process_fidelity(tomo.chi_of_unitary(device_unitary(params)), tomo.chi_of_unitary(target))
    print(f"{g.value:18s} residual={residual:.1e} process fidelity={fid:.9f} ({time.perf_counter() - t0:.2f} s)")

params, _ = solve_device_params(gate_library(GateName.CNOT_PolCtrlPath), rng=np.random.default_rng(0))
print("\nCNOT settings (radians):")
for name, value in params.to_dict().items():
    print(f"  {name:10s} {value:.4f}")
