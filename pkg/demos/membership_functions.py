"""
Membership functions and uniform partitions
===========================================

Evaluates the three shapes (left shoulder, triangle, right shoulder) and
shows that a uniform partition's degrees always sum to 1.
"""

import numpy as np

from fuzzkey import eval_membership, fuzzify, make_uniform_partition

partition = make_uniform_partition(3)
for mf in partition.sets:
    print(f"{mf.label:>8}: kind={mf.kind}  a={mf.a}  b={mf.b}  c={mf.c}")

# sample the whole unit interval
print("\n    x    " + "".join(f"{mf.label:>10}" for mf in partition.sets) + "       sum")
for x in np.linspace(0, 1, 11):
    degrees = fuzzify(float(x), partition).degrees
    row = "".join(f"{d:10.4f}" for d in degrees)
    print(f"{x:7.2f}  {row}{sum(degrees):10.4f}")

# a single set can be evaluated on its own
low = partition.sets[0]
print("\nLow falls linearly between its breakpoints:")
for x in (0.25, 0.3125, 0.375, 0.4375, 0.5):
    print(f"  mu_Low({x:.4f}) = {eval_membership(x, low):.4f}")

# more sets, same guarantee: degrees sum to one everywhere
for n_sets in (2, 4, 7):
    p = make_uniform_partition(n_sets)
    worst = max(abs(sum(fuzzify(float(x), p).degrees) - 1.0) for x in np.linspace(0, 1, 500))
    print(f"N={n_sets}: max |sum - 1| over 500 points = {worst:.2e}")
