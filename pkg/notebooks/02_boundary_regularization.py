"""
The end of the period breaks the triangle inequality
====================================================

A stationary network: ``a -> c`` takes two hours direct, or one hour via ``b``.
Near the end of the period the detour is no longer available, because its
second leg would start after the data ends.
"""

# %%
from ttmetric import compute_epsilon, maxmin_metric, regularize, verify_metric_axioms, worst_best_matrix
from ttmetric.engine import travel_time_table
from ttmetric.io import boundary_example

raw = boundary_example()
t_u = worst_best_matrix(raw)
print(t_u.to_array())
print(verify_metric_axioms(t_u).triangle.witnesses)

# %% [markdown]
# Which departures are affected?  Everything after 450, when the half-hour
# leg to b would arrive past 480.

# %%
table = travel_time_table(raw)
ac = table.values[0, 2] / 2
print("first tick at 120:", int((ac == 120).argmax()))

# %% [markdown]
# Regularizing adds, for every ordered pair, a route that can only be boarded
# after the period and takes half the shortest real duration.  It never wins
# inside the period's maximum, yet it gives every late trip a way to finish.

# %%
eps = compute_epsilon(raw)
print("epsilon:", eps.value, "from segment", eps.segment)
reg = regularize(raw, eps)
m = maxmin_metric(reg)
print(m.to_array())
print(verify_metric_axioms(m).ok)

# %%
late = travel_time_table(reg).values[0, 2] / 2
print("T(a,c,t) for t in 450..480:", late[450:].tolist())
