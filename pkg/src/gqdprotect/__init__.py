"""Geometric quantum discord of two qutrits under non-Markovian amplitude
damping, and its protection by weak measurement and measurement reversal."""

from .bloch import (bloch_decompose, correlation_matrix, gellmann, gqd_lower_bound,
                    gqd_lower_bound_raw, gqd_two_qubit)
from .linalg import (check_density_matrix, hermitian_eigenvalues, partial_trace,
                     partial_transpose, tensor)
from .protocol import (ProtocolResult, ReversalParams, WeakMeasurementParams,
                       closed_form_horodecki, closed_form_werner, optimal_reversal,
                       phase_removal, protect_single, protect_two_qutrit,
                       reversal_measure, weak_measure)
from .reservoir import (DecaySnapshot, ReservoirParams, apply_channel_single,
                        apply_channel_two_qutrit, decay_functions, decay_ode_oracle,
                        diagonalizing_unitary, kraus_operators, structure_constants)
from .states import bell_qutrit, ground_ground, horodecki, random_density, werner
from .sweep import SweepConfig, SweepRecord, query_point, run_sweep

__version__ = "0.1.0"
