"""
Stability, capacity and rolling periods
=======================================
"""

# %%
from ttmetric import CapacityScenario, RollingSpec, capacity_scenario, make_network
from ttmetric import rolling_metrics, stability_metric
from ttmetric.io import boundary_example, minmin_counterexample

# %% [markdown]
# Stability: drop each fastest walk and see how much slower the runner-up is.

# %%
report = stability_metric(minmin_counterexample())
print(report.baseline.to_array())
print(report.excluded.to_array())

# %% [markdown]
# Capacity: the a -> b leg is full, so only a slow parallel service remains.

# %%
pe2 = boundary_example()
segs = [(s.id, s.source, s.target, s.profile, 1) for s in pe2.segments]
segs.append(("a-b-slow", "a", "b", 100))
net = make_network(pe2.ids, segs, (0, 480), pe2.waiting)
print(capacity_scenario(net, CapacityScenario("none")).to_array())
print(capacity_scenario(net, CapacityScenario("a-b full", {"r2": 1})).to_array())

# %% [markdown]
# Rolling windows over the day: three hours wide, every two hours.  The dips
# are short-lived, so the worst case inside every window is the same.

# %%
for end, m in rolling_metrics(minmin_counterexample(), RollingSpec(180, 120)):
    print(end, m["a", "b"], m["b", "c"], m["a", "c"])
