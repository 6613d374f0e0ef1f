# %% [markdown]
# # Discriminants of quantum affine spaces and Weyl algebras

# %%
from rootqca.discriminant import cluster_discriminant, torus_presentation, trace_matrix
from rootqca.torus import SkewForm
from rootqca.weyl import WeylAlgebra, weyl_discriminant, weyl_seed

form = SkewForm.from_integer(3, [[0]])
pres = torus_presentation(form)
for row in trace_matrix(pres):
    print([str(x) for x in row])
result = cluster_discriminant(pres)
print(result.discriminant, result.total_exponents(3))

# %% [markdown]
# The quantum plane at l = 3: expect 3^18 x1^18 x2^18.

# %%
plane = cluster_discriminant(torus_presentation(SkewForm.from_integer(3, [[0, 1], [-1, 0]])))
print(plane.verdict, plane.total_exponents(3))

# %% [markdown]
# The Weyl algebra with one pair of generators. Its seed is read off the actual
# commutation relations; the discriminant factors completely as 3^18 times a
# power of z^3, and that power is 6, so z appears to the 18th power.

# %%
alg = WeylAlgebra(1, 3)
report = weyl_seed(alg)
print("observed form", report.lambda_observed, "exchange", report.bmatrix, "d", report.d)
disc = weyl_discriminant(alg)
print(disc.result.discriminant)
print("closed-form exponent", disc.exponent, "observed", disc.observed_exponents, "match", disc.verdict)
