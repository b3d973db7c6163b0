# %% [markdown]
# Evaluating the confluent Heun function near the origin
#
# `hc_eval` sums the Frobenius series with HC(0) = 1 and returns the value
# with its first two derivatives.  Two independent checks follow: the
# residual of the equation, and a Taylor-stepping integrator started from
# series data close to the origin.

# %%
import numpy as np

from cheun import CheParams, che_residual, hc_eval, heun_function, second_solution, taylor_oracle

prm = CheParams(p=0.3 + 0.1j, gamma=0.8, delta=0.6 - 0.2j, alpha=0.4, sigma=0.2 + 0.3j)
for z in (0, 0.2, 0.3j, -0.4 + 0.1j):
    j = hc_eval(prm, z)
    print(f"z={z!s:>12}  HC={j.value:.12f}  HC'={j.d1:.12f}")

# %% residuals on a ring of points
zs = 0.4 * np.exp(1j * np.linspace(0, 2 * np.pi, 12, endpoint=False))
print("HC residual:    ", che_residual(prm, heun_function(prm), zs).max_residual)
print("second solution:", che_residual(prm, second_solution(prm), zs).max_residual)

# %% integrate outward from z0 = 0.1 and compare with the series
z0, z1 = 0.1, 0.45j
start = hc_eval(prm, z0)
u, du = taylor_oracle(prm, z0, start.value, start.d1, z1)
ref = hc_eval(prm, z1)
print("oracle vs series:", abs(u - ref.value) / abs(u), abs(du - ref.d1) / abs(du))
