# coding: utf-8

# # Gauss sums of order 49 over F_{2^21}
#
# In the index-2 case every Gauss sum of a character of order `l^2` lies in
# `Q(sqrt(-l))`.  We print the exact values and check them numerically against
# the enumeration.

# In[1]:

import mpmath

from index2walsh import validate_instance
from index2walsh.algebra import embed_complex, norm_squared
from index2walsh.closed_form import gauss_sum_index2, gauss_sum_total, quadratic_gauss
from index2walsh.gf import build_field
from index2walsh.oracle import brute_gauss_sum, brute_quadratic_gauss, count_matrix, params_for_period, period_in_field

params = validate_instance(2, 7)
ctx = build_field(2, 21, N=49)
params = params_for_period(params, period_in_field(params, ctx))
counts = count_matrix(ctx, 49)


# In[2]:

for j in (1, 3, 7, 21):
    exact = gauss_sum_index2(params, j)
    brute, _ = brute_gauss_sum(ctx, counts, j)
    print(f"G(chi^{j:<2}) = {exact}")
    print(f"          ~ {mpmath.nstr(embed_complex(exact), 12)}   enumerated {mpmath.nstr(brute, 12)}")
    assert norm_squared(exact) == params.q


# Summing over all `j` gives `sum_x psi(x^49)`, a different quantity from the
# Walsh value at zero.

# In[3]:

print("sum over j of G(chi^j) =", gauss_sum_total(params))


# Quadratic Gauss sums have the classical closed form.

# In[4]:

for p, f in [(3, 2), (5, 2), (3, 3), (7, 2), (11, 2)]:
    g = quadratic_gauss(p, f)
    print(f"q = {p}^{f}: {g}   |closed - enumerated| = "
          f"{mpmath.nstr(abs(g.embed() - brute_quadratic_gauss(build_field(p, f))), 3)}")
