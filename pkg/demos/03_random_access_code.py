# %% [markdown]
# # Qubits beat bits at the 2-to-1 random access code
#
# Bob's success probability is (S + 4) / 8. With one classical bit it is at
# most 3/4; a see-saw over qubit strategies finds cos^2(pi/8).

# %%
import numpy as np

from sdiqkd import optimal_setup, quantum_table, quantum_value_seesaw, rac_success, witness_S

res = quantum_value_seesaw(witness_S(), restarts=20, seed=0)
print("see-saw value:", res.value, " 2 sqrt 2 =", 2 * np.sqrt(2))
print("P_B at optimum:", float(rac_success(quantum_table(res.setup))))

# %% [markdown]
# The closed-form optimum keeps the BB84 states and rotates Bob's two
# measurements onto the diagonals of the x-z plane.

# %%
setup = optimal_setup()
print("axes:", [m.axis.round(4).tolist() for m in setup.measurements])
print("P_B:", float(rac_success(quantum_table(setup))), " cos^2(pi/8) =", np.cos(np.pi / 8) ** 2)
