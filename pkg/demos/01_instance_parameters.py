# coding: utf-8

# # Instance parameters
#
# An instance is a prime `p` and a prime `l = 3 (mod 4)`, `l != 3`, such that
# `p` generates a subgroup of index 2 in the units mod `l^2`.  Everything else
# (the field degree, the class number, the norm-equation solution) is derived.

# In[1]:

from index2walsh import validate_instance
from index2walsh.errors import InvalidInstance

params = validate_instance(2, 7)
print(params.to_dict())


# The field is `F_q` with `q = p^f` and `f = l(l-1)/2`.  For `(2, 7)` that is
# `2^21`, small enough to enumerate.

# In[2]:

print("f =", params.f, " q =", params.q, " N =", params.N)
print("a^2 + l b^2 =", params.a**2 + params.l * params.b**2, "= 4 p^h =", 4 * params.p**params.h)


# The case split: when `-l = 1 (mod p)` we are in the Special case and a sign
# `delta` is paired with the sign of `b`.  Otherwise the period residue
# `epsilon` is used.

# In[3]:

for p, l in [(2, 7), (11, 7), (3, 107)]:
    pr = validate_instance(p, l)
    print(f"(p, l) = ({p}, {l})  h={pr.h}  a={pr.a}  b={pr.b}  case={pr.case}  "
          f"delta={pr.delta}  epsilon={pr.epsilon}")


# Flipping the sign of `b` flips `delta` too; the pair is what matters.

# In[4]:

flipped = params.with_b_sign(-1)
print("b:", params.b, "->", flipped.b, "   delta:", params.delta, "->", flipped.delta)


# Instances outside the index-2 case are refused with a specific error.

# In[5]:

for p, l in [(3, 7), (2, 11), (2, 13)]:
    try:
        validate_instance(p, l)
    except InvalidInstance as exc:
        print(f"({p}, {l}): {type(exc).__name__}: {exc}")


# The partition of `Z/l^2` into five classes drives the whole spectrum.

# In[6]:

part = params.partition
print("H1_0 =", sorted(part.H1_0), " H1_1 =", sorted(part.H1_1))
print("|H2_0| =", len(part.H2_0), " |H2_1| =", len(part.H2_1))
