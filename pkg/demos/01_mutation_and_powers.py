# %% [markdown]
# # Mutation at a root of unity
#
# Start from the rank-two A2 seed at l = 5, mutate around its pentagon, and
# watch the l-th powers of cluster variables behave like classical ones.

# %%
from rootqca.central import exchange_identity_check, frobenius_check
from rootqca.exchange_graph import classical_shadow_iso, explore
from rootqca.samples import finite_type_seed, non_coprime_seed

seed = finite_type_seed("A2", 5)
print("d =", seed.d)
for word in [(0,), (0, 1), (0, 1, 0), (0, 1, 0, 1), (0, 1, 0, 1, 0)]:
    print(word, [str(v) for v in seed.mutate_word(word).frame])

# %% [markdown]
# After five mutations the frame comes back up to a swap of positions, so the
# exchange graph is a pentagon.

# %%
graph = explore(seed)
print(graph.summary())
print(graph.to_dot())

# %% [markdown]
# Fifth powers are central and follow classical mutation under x_i -> X^(5 e_i).

# %%
print(all(frobenius_check(seed, w).passed for w in [(0,), (0, 1), (1, 0, 1)]))
iso = classical_shadow_iso(seed)
print("graph isomorphism:", iso.ok, iso.witness)

# %% [markdown]
# With d = (3, 1) and l = 9 the coprime hypothesis fails, and so does the
# exchange identity for ninth powers. The residual is exactly the surviving
# middle binomial terms.

# %%
for ell in (9, 4):
    check = exchange_identity_check(non_coprime_seed(ell), 0)
    print(ell, check.passed, check.residual)
