"""From quantum state to classical bit streams and back.

Each prepared copy of the state yields one row of detector bits.  The
empirical frequencies of those rows estimate the exact outcome table, and
every entropy-based quantity can be recomputed from the finite record.
This demo shows the streams, the estimate quality, and how both improve
with the number of prepared copies.
"""

import numpy as np

from qig import (
    DetectorSetting,
    build_entropy_table,
    convergence_report,
    distance,
    empirical_distribution,
    format_bit_record,
    joint_distribution,
    make_named_state,
    sample_runs,
)

state = make_named_state("ghz", 3)
settings = [
    DetectorSetting("A", 0.0),
    DetectorSetting("B", np.pi / 4),
    DetectorSetting("C", np.pi / 4),
]
exact = joint_distribution(state, settings)

print("first 19 prepared copies (rows = copies, columns = observers A, B, C):")
small = sample_runs(exact, 19, seed=20_240_601)
print(format_bit_record(small))

emp = empirical_distribution(small)
alice = np.array(small.runs[:, 0])
print(f"Alice's column: {alice.sum()} ones out of 19 runs -> "
      f"p(1) = {alice.sum()}/19 = {alice.sum() / 19:.4f}")
print()

big = sample_runs(exact, 1_000_000, seed=20_240_601)
emp_big = empirical_distribution(big)
table = build_entropy_table(emp_big)
print(f"after 10^6 copies: empirical A-B distance = {distance(table, 'A', 'B'):.6f} "
      "(exact: 2.0)")
print()

print("error vs number of prepared copies (same master seed):")
print(f"{'N':>10} {'TV distance':>12} {'|d_ab error|':>13}")
for row in convergence_report(state, settings, [1_000, 10_000, 100_000, 1_000_000], seed=7):
    print(f"{row.n_samples:>10} {row.tv_distance:>12.6f} "
          f"{row.distance_dev[('A', 'B')]:>13.6f}")
