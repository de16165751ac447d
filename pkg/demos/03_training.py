"""Train the device from random settings using only measured overlaps.

Each iteration nudges one of the 16 settings according to two overlap
measurements. With finite shots the measured overlaps are binomial estimates,
yet the device still learns the encoder.
"""

import numpy as np

from qautoenc.qstate import Ensemble, two_qubit_state
from qautoenc.train import TrainConfig, train

e = Ensemble.uniform([two_qubit_state({"RH": 1}), two_qubit_state({"LV": 1})], trash="path")

for shots in (None, 3000):
    finals = []
    for seed in range(5):
        trace = train(TrainConfig(seed=seed, shots=shots, max_iters=1000 if shots is None else 2000), e, ref=[1, 0])
        finals.append(trace.final_cost)
    mode = "exact" if shots is None else f"{shots} shots"
    print(f"{mode:>10s}: final costs " + " ".join(f"{c:.1e}" for c in finals))

trace = train(TrainConfig(seed=0), e, ref=[1, 0])
print("\nmeasured cost every 100 iterations (seed 0):")
for it in range(0, len(trace), 100):
    print(f"  {it:4d}  {trace.cost[it]:.4f}  a={trace.a[it]:.3f}")
print(f"anneal events at {trace.anneal_iterations}")
