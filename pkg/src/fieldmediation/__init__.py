"""Field-mediated entanglement between two objects each superposed over two trajectories."""
from .entanglement import TwoQubitState, concurrence, mutual_information, negativity, partial_transpose
from .errors import ConfigError, DomainError, InvariantViolation, NumericError, SingularityError
from .field import FieldSpec, mode_set, pauli_jordan, wightman
from .gaussian import branch_overlaps, displacement, influence_phase, reduced_density
from .oracle import dense_evolve, random_model
from .qgem import QgemConfig, newton_phase, qgem_concurrence, qgem_state
from .scenario import Causality, Scenario, Trajectory, causal_classification, sample_current
from .separability import (
    ControlledUnitaryModel,
    SeparableDecomposition,
    build_rho,
    controlled_unitary_form,
    separable_decomposition,
    spectral_decompose,
)

__version__ = "0.1.0"
