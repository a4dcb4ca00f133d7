# %% [markdown]
# # Key rate against individual attacks
#
# Eve's guessing probability is bounded by (5 + sqrt 3)/4 - P_B, so a key
# exists once P_B exceeds (5 + sqrt 3)/8.

# %%
import numpy as np

from sdiqkd.security import P_QUANTUM, THRESHOLD, key_rate, report_from_pb

print(f"threshold P_B = {THRESHOLD:.6f}")
print(f"rate at the qubit optimum P_B = {P_QUANTUM:.6f}: {key_rate(P_QUANTUM):.6f} bits")

for p in np.linspace(0.75, 0.86, 12):
    rep = report_from_pb(p)
    print(f"P_B = {p:.3f}  P_E <= {rep.p_eve_bound:.3f}  rate = {rep.key_rate:+.4f}  secure = {rep.secure}")
