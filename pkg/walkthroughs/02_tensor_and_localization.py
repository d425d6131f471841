# %% [markdown]
# # Tensor products and localization
#
# Quotients of Λ are coordinate projections. Tensoring two of them kills the
# union of what each kills. A presented abelian group (Smith normal form)
# gives an independent answer to compare against.

# %%
from lambda_lab.product_ring import IndexSet
from lambda_lab.tensor_local import QuotAlgebra, compare_tensor, lemma_lambda_f, tensor, tensor_oracle

R = IndexSet.of("abc", 2)
A = QuotAlgebra.surviving(R, "ab")
B = QuotAlgebra.surviving(R, "bc")
print("structural A ⊗ B survives on", sorted(tensor(A, B).survivors))

oracle = tensor_oracle(A, B)
print("presented group: invariant factors", oracle.invariant_factors, "order", oracle.order)
print("ring isomorphism between the two:", compare_tensor(A, B).is_iso)

# %%
disjoint = compare_tensor(QuotAlgebra.surviving(R, "a"), QuotAlgebra.surviving(R, "c"))
print("disjoint supports give the zero ring:", disjoint.oracle_order == 1)

# %% [markdown]
# Inverting f by formal fractions g / f^n lands on the product over Su(f).

# %%
R3 = IndexSet.of("ab", 3)
for f in [R3.delta("a"), R3.element([2, 1]), R3.zero]:
    w = lemma_lambda_f(f)
    print(f"f = {f}: {w.fraction_classes} fraction classes, target {w.target.labels}, iso {w.is_iso}")
