"""Groverian entanglement of n-qubit states and its evolution during Grover search."""

from .aux_measures import TangleTerms, entropy_measure, entropy_of_rdm, tangle_terms, three_tangle
from .errors import ConfigurationError, DomainError, GroverianError, StateFileError, UnsupportedSizeError
from .grover import (
    EvolutionTrace,
    IterationAngle,
    analytic_bloch,
    analytic_state,
    apply_diffusion,
    apply_oracle,
    optimal_iterations,
    run_trace,
    success_probability,
)
from .measure import (
    CoefficientGroups,
    MeasureResult,
    NumericConfig,
    SignPattern,
    averaged_operational_success,
    closed_form_pmax,
    coefficient_groups,
    grid_pmax,
    numeric_pmax,
    operational_success,
    render_groups,
    sign_pattern,
)
from .state import (
    BlochVector,
    ProductState,
    ReducedDensityMatrix,
    StateVector,
    bloch_from_rdm,
    make_named,
    overlap,
    product_to_state,
    reduce_qubit,
)
from .statefile import dump_state, load_state

__version__ = "0.1.0"
