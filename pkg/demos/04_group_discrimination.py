"""Use the autoencoder as a classifier for two groups of states.

Group a sits near 0 degrees, group b near 60 degrees. Training drives each
group to its own orthogonal polarization state, and the error it reaches
matches the best possible measurement.
"""

import numpy as np

from qautoenc.disc import helstrom_bound, interval_problem
from qautoenc.train import TrainConfig, train_discrimination

problem = interval_problem(np.deg2rad([-4, 4]), np.deg2rad([56, 64]), basis=(0, 1), dim=4)
bound = helstrom_bound(problem).p_error
print(f"minimum possible error: {bound:.5f}")

for seed in range(3):
    trace = train_discrimination(TrainConfig(seed=seed), problem, (2, 2), 1, [1, 0], [0, 1])
    print(f"seed {seed}: trained error {trace.final_cost:.5f}")

dense = interval_problem(np.deg2rad([-4, 4]), np.deg2rad([56, 64]), basis=(0, 1), dim=4, samples=41)
print(f"bound with the whole interval sampled: {helstrom_bound(dense).p_error:.5f}")
