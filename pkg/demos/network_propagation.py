# %% md
# Dynamic fuzzy network: propagation, counters, structural edits
# %%
from fuzzkey import DynamicFuzzyNetwork

net = DynamicFuzzyNetwork(n_features=4, n_sets=3, n_layers=4)
print("fuzzy width:", net.fuzzy_width)
print("weight shapes:", [w.shape for w in net.weights])

# %%
# One forward pass: fuzzy layer -> hidden mean -> output mean.
output, layers, stats = net.propagate([0.1, 0.4, 0.7, 0.95])
print("fuzzy layer:", tuple(round(v, 3) for v in layers[0]))
print("hidden layer:", tuple(round(v, 3) for v in layers[1]))
print("output:", round(output, 4))
print("counters:", stats)  # mf_evals is exactly N*n

# %%
# Cost scales linearly with the feature count at fixed N.
for n in (1, 2, 4, 8, 16):
    probe = DynamicFuzzyNetwork(n, 3, 4)
    _, _, s = probe.propagate([0.5] * n)
    print(f"n={n:>2}  mf_evals={s.mf_evals:>3}  hidden_ops={s.hidden_ops}")

# %%
# Structural edits: resize the partitions, then drop a feature.
net.update_membership_functions(5)
print("after N=5:", net.fuzzy_width, [w.shape for w in net.weights])
net.update_nodes(remove=[1])
print("after removing feature 1:", net.n_features, [w.shape for w in net.weights])
output, _, _ = net.propagate([0.2, 0.5, 0.8])  # still propagates cleanly
print("output after edits:", round(output, 4))

# %%
# The registry groups instances whose winning labels agree.
net2 = DynamicFuzzyNetwork(2, 3, 4)
for name, x in [("a", (0.1, 0.9)), ("b", (0.2, 0.8)), ("c", (0.5, 0.5))]:
    print(name, "->", net2.record_pattern(name, x))
print("groups:", dict(net2.registry.groups))
