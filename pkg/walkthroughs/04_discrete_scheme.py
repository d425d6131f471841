# %% [markdown]
# # The discrete scheme on a finite set
#
# Every subset is open and sections over U are ∏_{x∈U} K_x. We check the
# sheaf axioms, compare with Spec Λ and look at Fun(−, K).

# %%
from lambda_lab.product_ring import IndexSet
from lambda_lab.scheme_functor import (
    check_separated,
    check_sheaf,
    duality,
    eta_morphism,
    stalk_order,
)

R = IndexSet.of("abc", ["2", "3", "4"])
for r in check_sheaf(R) + check_separated(R):
    print(f"{r.check:<36}{r.verdict:<8}{r.detail}")

# %%
eta = eta_morphism(R)
print("η: X → Spec Λ homeomorphism:", eta.homeomorphism, " comparison maps iso:", eta.comparisons_iso)
for x in R.labels:
    print(f"stalk at {x}:", stalk_order(R, x)[0], "elements")

# %% [markdown]
# Precomposition turns maps of sets into ring maps the other way round.

# %%
squash = duality({"1": "a", "2": "a"}, ["1", "2"], ["a"], 2)
embed = duality({"1": "a"}, ["1"], ["a", "b"], 2)
print("surjective f  -> injective Fun(f):", squash.surjective, squash.fun_injective)
print("injective f   -> surjective Fun(f):", embed.injective, embed.fun_surjective)
