"""Excitation-dependent entanglement between two coupled four-level chromophores.

Typical use::

    from qudit_eet import default_model, default_params, EvolutionGrid, entanglement_trace

    trace = entanglement_trace(default_model(), default_params(), EvolutionGrid.uniform(5.0, 20001))
"""
from .dynamics import EvolutionGrid, JointGenerator, PairPropagator, build_joint_generator, evolve_pair
from .entanglement import (
    EntanglementTrace,
    entropy_of_entanglement,
    reduced_density_eigenvalues,
    schmidt_values,
)
from .excitation import build_drive_generator, populations, prepare_initial_state, rotating_frame_unitary
from .experiments import (
    EntanglementEngine,
    InvariantViolation,
    compare_truncations,
    entanglement_trace,
    max_entanglement,
    sweep_gamma,
    sweep_surface,
)
from .linalg import HermitianEigenSystem, eig_hermitian, propagator, singular_values
from .model import DimensionlessParams, QuditModel, TruncationMode, default_model, default_params, truncate

__version__ = "0.1.0"
