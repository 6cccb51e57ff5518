# coding: utf-8

# # The (2, 7) spectrum, closed form against enumeration
#
# We build `F_{2^21}`, count `Tr(x)` on every multiplicative class mod 49, and
# compare the resulting Walsh values with the closed-form table.

# In[1]:

import time

from index2walsh import validate_instance
from index2walsh.closed_form import spectrum
from index2walsh.gf import build_field
from index2walsh.oracle import brute_walsh_spectrum, count_matrix, params_for_period, period_in_field


# In[2]:

params = validate_instance(2, 7)
ctx = build_field(2, 21, seed=0, N=49)
print("modulus (low-first):", ctx.modulus)


# The closed forms are stated for a sign of `b`.  A concrete field fixes that
# sign through the period `sum_{u in H1_0} beta^(7u)`; we read it off and pick
# the matching parameters.

# In[3]:

anchored = params_for_period(params, period_in_field(params, ctx))
print("b =", anchored.b, " delta =", anchored.delta)


# In[4]:

t0 = time.perf_counter()
counts = count_matrix(ctx, 49)
brute = brute_walsh_spectrum(ctx, counts)
print(f"enumerated 2^21 - 1 powers in {time.perf_counter() - t0:.1f}s")


# In[5]:

table = spectrum(anchored)
print(table.to_text())


# In[6]:

print("multisets agree:", brute.multiset() == table.multiset())
print("distinct values:", len(brute.multiset()))
print("f^(0) =", brute.at_zero)
