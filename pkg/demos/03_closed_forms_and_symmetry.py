# %% [markdown]
# Closed-form solutions on the special loci
#
# Case 1 (alpha = 0, delta = -1, sigma = 4p + gamma - 1) involves the upper
# incomplete gamma function.  Cases 2 and 3 use Kummer and Goursat functions
# and are mapped onto each other by z -> 1 - z with gamma and delta swapped
# and p -> -p.

# %%
from cmath import exp

from cheun import case1_family, case2_family, case3_family, che_residual, mirrored_family
from cheun.closed_forms import proportionality

zs = [0.35 * exp(1j * t) for t in (0.4, 1.0, 1.6, 2.2, 2.7)]

fam1 = case1_family(0.25, 0.5)
print("case 1 locus:", fam1.locus.astuple(), " constant:", fam1.constants["u2_constant"])
for i, u in enumerate(fam1.u_branches, 1):
    print(f"  u{i} residual {che_residual(fam1.locus, u, zs).max_residual:.1e}")

# %% case 3 against the mirrored case 2
p, alpha = 0.2, 0.5
direct = case3_family(-p, alpha)
image = mirrored_family(case2_family(p, alpha))
for name, a, b in zip(("u1", "u2", "w1", "w2"), direct.u_branches + direct.w_branches,
                      image.u_branches + image.w_branches):
    c, spread = proportionality(a, b, zs)
    print(f"  {name}: ratio {c:.6f}  spread {spread:.1e}")
