# %% [markdown]
# # Products of finite fields
#
# Λ = ∏ K_x over a finite set of points. Elements are tuples of field codes,
# and every ideal turns out to be described by a set of points.

# %%
from lambda_lab.finite_field import parse_field
from lambda_lab.product_ring import IndexSet, maximal_ideal, multiples_oracle, principal_ideal, quotient_by

F4 = parse_field("2^2")
t = F4.gen
print("in GF(4): t*t =", t * t, "  t^-1 =", t.inverse())

# %%
R = IndexSet.of("abc", ["2", "3", "4"])
print(R.describe(), "has", R.order, "elements")

f = R.element([1, 2, 0])
print("f =", f, " support", sorted(f.support()), " unit?", f.is_unit())

# %% [markdown]
# The ideal generated by f is everything supported inside Su(f).
# Compare the predicate with the brute-force list of multiples r·f.

# %%
I = principal_ideal(f)
same = (I.mask() == multiples_oracle(f)).all()
print("support predicate agrees with multiples:", bool(same), f"({I.size} members)")
h = R.element([2, 1, 0])
print("h =", h, " witness h' =", I.witness(h), " h'·f =", I.witness(h) * f)

# %%
for x in R.labels:
    m = maximal_ideal(R, x)
    print(f"m_{x}: support {sorted(m.support)}, generator 1 - Δ_{x} =", R.one - R.delta(x))

target, proj = quotient_by(f)
print("Λ/(f) is the product over", target.labels, "with", target.order, "elements")
