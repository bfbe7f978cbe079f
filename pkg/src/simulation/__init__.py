from src.simulation.registers import (
    RegisterLayout,
    is_power_of_two,
    smallest_power_of_two_at_least,
    two_register_layout
)
from src.simulation.states import (
    StateVector,
    basis_state,
    condition_on_register,
    reduced_density_matrix,
    register_factor,
    state_from_amplitudes,
    states_equal_up_to_phase
)
from src.simulation.unitaries import (
    Unitary,
    apply,
    hadamard_layer,
    hadamard_unitary,
    oracle_modmul_unitary,
    oracle_xor_unitary,
    qft_unitary
)
from src.simulation.measurement import (
    MeasurementRecord,
    marginal_distribution,
    measure,
    prime_basis_state
)
