"""
Fuzzy inference, step by step
=============================

Walks one normalized value through fuzzification, rule firing and centroid
defuzzification, then sweeps the whole interval to show the resulting
relevance curve is nondecreasing.
"""

import numpy as np

from fuzzkey import (
    DefuzzConfig,
    RuleBase,
    defuzzify_centroid,
    evaluate_rules,
    fuzzify,
    make_uniform_partition,
)

partition = make_uniform_partition(3)
rules = RuleBase.identity(3)      # low->low, medium->medium, high->high
defuzz = DefuzzConfig.uniform(3)  # centers at 0, 0.5, 1

x = 0.375
mv = fuzzify(x, partition)
print(f"input value       x = {x}")
print(f"fuzzified         m = {mv.degrees}")

activation = evaluate_rules(mv, rules)
print(f"rule activations    = {activation}")

score = defuzzify_centroid(activation, defuzz)
print(f"centroid score    R = {score}")

# the same machinery with a permuted rule base inverts the ranking
flipped = RuleBase(((0, 2), (1, 1), (2, 0)))
print(f"\nwith low<->high rules the activations swap: {evaluate_rules(mv, flipped)}")

print("\nsweep: the identity-rule inference curve never decreases")
previous = -1.0
for x in np.linspace(0, 1, 9):
    crisp = defuzzify_centroid(evaluate_rules(fuzzify(float(x), partition), rules), defuzz)
    marker = "ok" if crisp >= previous else "VIOLATION"
    print(f"  x={x:5.3f} -> R={crisp:8.5f}  {marker}")
    previous = crisp
