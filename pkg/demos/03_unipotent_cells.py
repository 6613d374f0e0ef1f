# %% [markdown]
# # Seeds from reduced words

# %%
from rootqca.kacmoody import build_unipotent_seed_data, reduced_word_data, sl, theorem_c_check

sl3 = sl(3)
data = reduced_word_data(sl3, (1, 2, 1))
print("roots", data.roots, "mutable", data.ex)

# %% [markdown]
# The form built from the commutation of generalized minors satisfies
# Lambda^T B = kappa [D; 0] with kappa = -2 instead of 1.

# %%
seed_data = build_unipotent_seed_data(sl3, (1, 2, 1))
print("Lambda", seed_data.lam)
print("B", seed_data.bmatrix)
print("Lambda^T B", seed_data.product, "kappa", seed_data.kappa)
print("d at l = 3:", seed_data.seed(3).d)

# %% [markdown]
# Discriminants: two small words, then the (1, 2, 1) word at l = 3 (a few seconds).

# %%
for word in [(1,), (1, 2)]:
    r = theorem_c_check(sl(len(word) + 1), word, 3)
    print(word, r.verdict, r.observed_exponents)
stretch = theorem_c_check(sl3, (1, 2, 1), 3, allow_stretch=True)
print((1, 2, 1), stretch.verdict, stretch.observed_exponents, f"{stretch.seconds:.1f}s")
