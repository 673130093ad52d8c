import os

from twotime.exceptions import (TwoTimeException, ValidationError, DimensionMismatch, DomainError,
                                ParameterError, SimulationError, ParseError)
from twotime.rng import Seed, split
from twotime.operators import (HermitianOperator, DensityOperator, SpectralDecomposition, spectral_decompose,
                               projectors_pm, random_density, random_pure_density, random_hermitian)
from twotime.paulis import PauliExpression, pauli, to_operator, vector_observable
from twotime.parser import parse_observable, parse_vector3
from twotime.correlation import (two_time_correlation, anticommutator_correlation, self_correlation_identity,
                                 GramMatrix, gram_matrix, inner_product_report)
from twotime.gamma import (ObservableSubspace, GammaVerdict, pauli_basis, standard_gamma_basis, is_gamma_basis,
                           decide_gamma_space)
from twotime.simulate import (Schedule, OutcomeTrace, GeometryEstimate, vector_schedule, measure_once, run_sequence,
                              estimate_inner_product, estimate_angle, reconstruct_gram)


__twotime_version_path__ = os.path.join(os.path.dirname(__file__), 'VERSION')
__version__ = open(__twotime_version_path__, 'r').readline().strip()
