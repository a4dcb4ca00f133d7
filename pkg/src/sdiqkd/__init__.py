"""Semi-device-independent analysis of one-way (prepare-and-measure) QKD."""
from .qubit import BinaryMeasurement, bloch_to_density, born_zero_prob, density_to_bloch
from .rac import (
    bb84_classical_strategy,
    bb84_setup,
    mixed_setup,
    optimal_setup,
    rac_success,
    rac_success_direct,
)
from .security import (
    SecurityReport,
    binary_entropy,
    eve_guess_bound,
    key_rate,
    konig_bound,
    mutual_information_bits,
    security_report,
)
from .simulate import AttackModel, analytic_attacked_table, run_protocol, scan_eve_attacks
from .tables import (
    DataTable,
    DeterministicStrategy,
    QuantumSetup,
    SharedRandomnessStrategy,
    deterministic_table,
    mixture_table,
    quantum_table,
    table_distance,
)
from .witness import (
    ScenarioSymmetry,
    Witness,
    apply_symmetry,
    classical_bound,
    enumerate_facets,
    eval_witness,
    quantum_value_seesaw,
    witness_S,
)

__version__ = "0.1.0"
