# coding: utf-8

# # Cyclotomic numbers of order 2 and a character-sum identity

# In[1]:

import random

from index2walsh.closed_form import cyclotomic_numbers_order2
from index2walsh.gf import build_field
from index2walsh.oracle import brute_cyclotomic_numbers, lemma21_check


# `(i, j)_2` counts `x` in the class `C_i` with `1 + x` in `C_j`.  The answer
# only depends on `q mod 4`.

# In[2]:

for q in (7, 9, 13, 25, 27, 243, 3**9):
    closed = cyclotomic_numbers_order2(q)
    print(q, closed, "matches enumeration:", closed == brute_cyclotomic_numbers(q))


# For `n` and nonzero `a`, the sum `sum_x psi(a x^n + b)` expands into Gauss
# sums of the characters of order `gcd(n, q-1)`.

# In[3]:

rng = random.Random(0)
ctx = build_field(3, 2)
for _ in range(5):
    n = rng.randrange(1, 9)
    a = ctx.pow(ctx.alpha, rng.randrange(8))
    b = ctx.elem([rng.randrange(3), rng.randrange(3)])
    print(f"n={n} a={a} b={b}: identity holds = {lemma21_check(ctx, n, a, b)}")
