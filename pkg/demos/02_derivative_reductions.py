# %% [markdown]
# When is the derivative of HC another HC?
#
# For generic parameters, w = u' obeys an equation with an extra singular
# point at sigma / (4 p alpha).  It disappears on three loci (alpha = 0,
# sigma = 0, sigma = 4 p alpha), and there u' is a power prefactor times a
# confluent Heun function with shifted parameters.

# %%
from cheun import CheParams, all_relations, classify, derivative_ode_coeffs

generic = CheParams(0.25, 1.2, 0.7, 1.3, 0.4)
zs = generic.extra_singularity
print("classification:", classify(generic), " relations:", all_relations(generic))
print("coefficient size 1e-7 away from", zs, ":", abs(derivative_ode_coeffs(generic, zs + 1e-7)[0]))

# %% the sigma = 0 locus gives two reductions, s = 1 and s = -gamma
from cheun import verify_relation_coeffs, verify_relation_solutions

prm = CheParams(0.25, 0.7 + 0.2j, 0.6, 1.3, 0)
points = [0.1, 0.2j, -0.3 + 0.1j, 0.25 - 0.25j]
for rel in all_relations(prm):
    line = f"{rel.case.name:18} s={rel.s:.3g}  target={rel.target.astuple()}"
    line += f"  coeff gap={verify_relation_coeffs(prm, rel, points):.1e}"
    if rel.branch != "minus_delta":
        mean, spread = verify_relation_solutions(prm, rel, points)
        line += f"  ratio={mean:.6f} (spread {spread:.1e}, expected scale {rel.scale:.6f})"
    print(line)
