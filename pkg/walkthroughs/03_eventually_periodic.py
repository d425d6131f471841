# %% [markdown]
# # Eventually periodic sequences
#
# A countable product is replaced by sequences that are eventually periodic.
# Finite support forms an ideal 𝔉; cofinite support is a multiplicative set T.

# %%
from lambda_lab import ev_periodic as ev
from lambda_lab.ev_periodic import EvPeriodic

a = EvPeriodic.periodic(2, [1, 0])
b = EvPeriodic.periodic(2, [0, 1])
print(a.show(), "+", b.show(), "=", (a + b).show())

# %%
g = EvPeriodic(3, (0, 0, 1), (2, 1))
print("g =", g.show(), "support:", g.support_class().tag)
print("pseudo-inverse g* =", g.pseudo_inverse().show())
print("1 - g·g* has finite support:", ev.in_finite_ideal(ev.one(3) - g * g.pseudo_inverse()))

# %% [markdown]
# Fractions f/g with g cofinite go to the class of f·g* modulo 𝔉.

# %%
f = EvPeriodic.periodic(3, [1, 2, 0])
print("ψ(f/g) =", ev.localize_fraction(f, g).show())
checks = ev.localization_trials(3, trials=200, seed=1)
print("round trips on 200 random fractions:", all(c.ok for c in checks))

# %% [markdown]
# Finite-or-cofinite supports are closed under + over F_2 but not over F_3.

# %%
for q in (2, 3):
    print(ev.lambda_prime_closure_test(q, trials=1000).summary())
