# %% [markdown]
# Expansion in Kummer functions and its termination
#
# On sigma = 0 the derivative of the second local solution is expanded as
# sum a_n 1F1(alpha0 + n; gamma0 + n; -4 p z).  The coefficients follow a
# three-term recurrence.  If delta = -N or alpha - gamma = -N, and p solves a
# degree-N polynomial, the series stops after N terms and u is a finite sum
# of Goursat functions with no additive constant.

# %%
from cheun import CheParams, che_residual, eval_u, termination_case
from cheun import goursat

prm = CheParams(0.3, 0.7, 0.4, 1.1, 0)
exp_ = goursat.compute_coefficients(goursat.init_expansion(prm), 40)
print("a_n * n^2 for n = 10, 20, 40:", [abs(exp_.coeffs[n]) * n * n for n in (10, 20, 40)])

# %% partial sums do not make the w equation residual small: the leftover is a
# boundary term that settles to a nonzero limit
from cheun import generic_residual

a1 = lambda z: goursat.reduced_coeffs(prm, z)[0]
a0 = lambda z: goursat.reduced_coeffs(prm, z)[1]
for n in (6, 12, 24):
    part = goursat.truncated(exp_, n + 1)
    print(n, generic_residual(a1, a0, lambda z: goursat.eval_w(part, z), [0.3]).max_residual)

# %% termination: N = 2 on both branches gives 2N = 4 values of p
for branch in (goursat.DELTA_BRANCH, goursat.ALPHA_GAMMA_BRANCH):
    case = termination_case(2, branch, 0.7 + 0.2j, 0.4 - 0.3j)
    for root in case.p_roots:
        trunc = goursat.truncated(goursat.terminated_expansion(case, root), case.N)
        res = che_residual(trunc.params, lambda z: eval_u(trunc, z), [0.1, 0.2j, -0.25]).max_residual
        print(f"{branch:18} p={root:.6f}  residual with C0 = 0: {res:.1e}")
