# %% [markdown]
# # BB84 statistics can be faked with one classical bit
#
# The BB84 data table sits exactly on the classical bound of the witness S,
# and a two-branch shared-randomness strategy sending a single bit
# reproduces it cell for cell.

# %%
from sdiqkd import (
    bb84_classical_strategy,
    bb84_setup,
    classical_bound,
    eval_witness,
    mixture_table,
    quantum_table,
    table_distance,
    witness_S,
)

S = witness_S()
quantum = quantum_table(bb84_setup())
print("BB84 table:", quantum.to_json_dict())
print("S(BB84) =", eval_witness(S, quantum))
print("classical bound for one bit:", classical_bound(S, 2).value)

# %% [markdown]
# The classical strategy: with lambda = 0 Alice sends a0 and Bob outputs
# m xor y; with lambda = 1 she sends a1 and Bob outputs m.

# %%
fake = mixture_table(bb84_classical_strategy())
print("classical table:", fake)
print("distance to BB84:", table_distance(fake, quantum))
