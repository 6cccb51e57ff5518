# coding: utf-8

# # A field of size 3^5671
#
# `(3, 107)` cannot be enumerated, but the closed forms are exact and cheap.  We
# check the frequency, mean and Parseval identities and look at the values
# numerically.

# In[1]:

import mpmath

from index2walsh import validate_instance
from index2walsh.closed_form import spectrum, trace_beta_table
from index2walsh.oracle import in_field_trace_table, params_for_period, period_in_field

params = validate_instance(3, 107)
print("h =", params.h, " f =", params.f, " (a, b) =", (params.a, params.b), " case:", params.case)


# In[2]:

table = spectrum(params)
q = params.q
print("sum of frequencies == q     :", table.total_frequency() == q)
print("sum freq * value == q       :", table.mean_sum() == q)
print("sum freq * |value|^2 == q^2 :", table.parseval_sum() == q * q)
print("distinct values             :", table.distinct_values)


# Values have thousands of digits; the log of the modulus is more telling.

# In[3]:

for line in table.lines:
    print(f"{str(line.k_class):>6}  log10|value| = {mpmath.nstr(mpmath.log10(abs(line.approx)), 8)}")


# The trace of `beta^i` only needs the degree-53 subfield, which we can build.

# In[4]:

s = period_in_field(params)
matched = params_for_period(params, s)
print("period residue in the subfield:", s, " -> b =", matched.b)
print("trace table agrees:", in_field_trace_table(params) == trace_beta_table(matched).as_list())
