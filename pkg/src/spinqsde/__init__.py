"""Physical realizability and commutation-relation checks for open qubit QSDEs."""

from .algebra import (E, EBAR, ONE_E, LEVI_CIVITA, kron, levi_civita,
                      selftest_identities, theta, theta_inverse, unvec, vec)
from .errors import DomainError, ImaginaryResidueError, StepSizeError, SymmetryError
from .ito import (ItoIncrement, ccr_residual, ccr_residual_parts, ito_product,
                  oracle_equivalence, qsde_increment)
from .model import (BilinearQSDE, BlochState, PhysicalParams, master_mean_oracle,
                    quadrature_input, quadrature_output, realize, simulate_mean)
from .pauli import (PauliOperator, commutator, from_matrix, pauli_outer_relations_check,
                    pauli_product, to_matrix)
from .realizability import (CCRReport, RealizabilityReport, check_ccr_preservation,
                            check_physical_realizability, extract_parameters,
                            theorem3_harness)

__version__ = "0.1.0"
