"""
Why the best-case travel time is not a distance
===============================================

Three locations.  ``a -> b`` is fast for an hour from 17:00, ``b -> c`` is
fast for an hour from 10:00, and ``a -> c`` always takes 45 minutes.
"""

# %%
import numpy as np

from ttmetric import maxmin_metric, minmin_aggregate, regularize, verify_metric_axioms
from ttmetric.engine import travel_time_table
from ttmetric.io import minmin_counterexample

net = regularize(minmin_counterexample())
table = travel_time_table(net)

# %% [markdown]
# T(a, b, t) over the day, in minutes: 60 with a 10 minute dip at 17:00.  The
# 50 shows up in the last minutes, where a -> c followed by a short
# after-period route to b beats the 60 minute leg.

# %%
a, b, c = (net.index[x] for x in "abc")
ab = table.values[a, b] / 2
print("distinct values of T(a,b,t):", np.unique(ab))
print("dip starts at tick", int(np.argmax(ab < 60)))

# %% [markdown]
# Taking the minimum over departures picks the two dips, which happen at
# different times of day, so going a -> b -> c "costs" 20 while the direct trip
# costs 45.

# %%
mm = minmin_aggregate(net)
print(mm["a", "b"], mm["b", "c"], mm["a", "c"])
print(verify_metric_axioms(mm).triangle.witnesses)

# %% [markdown]
# Taking the maximum instead gives 60, 60 and 45, and every axiom holds.

# %%
m = maxmin_metric(net)
print(m.to_array())
print("metric:", verify_metric_axioms(m).ok)
