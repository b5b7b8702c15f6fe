#!/usr/bin/env python3
"""The semantics-of-information measure library.

Two equally rare events can matter very differently for a goal; weight
functions fold that disparity into entropy.  Divergences score how well a
reconstructed distribution matches the source, and the timeliness curve
turns age into value.
"""

import numpy as np

from semcom import (
    kl_divergence,
    renyi_entropy,
    semantic_value,
    time_avg_mse,
    timeliness,
    total_variation,
    weighted_entropy,
)

p = np.array([0.495, 0.495, 0.005, 0.005])
uniform_w = np.ones(4)
# outcome 2 is a safety-critical alarm, outcome 3 a curiosity
alarm_w = np.array([1.0, 1.0, 50.0, 1.0])

print("distribution:", p)
print("plain (unit-weight) entropy:  ", weighted_entropy(p, uniform_w), "bits")
print("alarm-weighted entropy:       ", weighted_entropy(p, alarm_w), "bits")
print()

print("Renyi entropy of the same distribution:")
for alpha in (0.5, 2.0, 1 + 1e-9):
    print(f"  alpha = {alpha}: {renyi_entropy(p, alpha):.6f} bits")
print()

source = np.array([2 / 3, 1 / 3])
good_recon = np.array([0.65, 0.35])
bad_recon = np.array([0.35, 0.65])
print("divergence-based reconstruction quality (source occupancy 2/3, 1/3):")
print(f"  KL  to good reconstruction: {kl_divergence(source, good_recon):.5f} bits")
print(f"  KL  to bad  reconstruction: {kl_divergence(source, bad_recon):.5f} bits")
print(f"  TV  to good reconstruction: {total_variation(source, good_recon):.5f}")
print(f"  TV  to bad  reconstruction: {total_variation(source, bad_recon):.5f}")
print()

print("timeliness decay exp(-gamma * age), gamma = 0.5:")
for age in range(5):
    print(f"  age {age}: {timeliness(age, 0.5):.4f}")
print()

print("composite value 0.4 * accuracy + 0.6 * timeliness (accuracy 0.9):")
for age in (0, 2, 6):
    print(f"  age {age}: {semantic_value(0.4, 0.6, 0.9, age, 0.5):.4f}")
print()

x = [0, 0, 1, 1, 0, 1]
xhat = [0, 1, 1, 0, 0, 1]
print(f"binary trajectories {x} vs {xhat}")
print("time-averaged MSE (= mismatch fraction):", time_avg_mse(x, xhat))
