"""Optimal-speed qubit evolution meets maximal-coherence light propagation.

Two unit spheres, one geometry: time-optimal two-level Hamiltonian evolution
on the Bloch sphere and intensity-preserving propagation of polarized light
at maximal degree of coherence on the Poincare sphere. The package builds
both sides, exposes their common structure, and verifies the correspondence
quantitatively.
"""

__version__ = "0.1.0"

from .bloch import (
    BlochAngles,
    angles_from_state,
    bloch_vector,
    fidelity,
    fubini_study_angle,
    orthogonal_state,
    state_from_angles,
    states_equal_up_to_phase,
)
from .coherence import (
    BisectorReport,
    ConstraintLedger,
    CorrespondenceReport,
    OpticalScenario,
    QuantumScenario,
    RotationSolution,
    bisector_geometry,
    correspondence_report,
    optical_efficiency,
    optimal_rotation,
    stokes_rotation_check,
)
from .interference import (
    AnalogyTriple,
    analogy_triple,
    classical_intensity,
    fringe_visibility,
    pancharatnam_intensity,
    quantum_probability,
)
from .mueller import (
    A_MATRIX,
    MuellerClass,
    classify_mueller,
    mueller_from_jones,
    mueller_rotator,
    wigner_rotation,
)
from .numerics import grid_search_max, matrix_exponential_su2, time_average_quadrature
from .polarization import (
    FieldAmplitudes,
    PolarizationReport,
    WienerDecomposition,
    coherency_from_stokes,
    degree_of_polarization,
    partial_coherence_profile,
    poincare_from_angles,
    poincare_vector,
    polarization_state_from_angles,
    rotate_coherency,
    stokes_from_coherency,
    stokes_from_fields,
    verify_ellipse_point,
    wiener_decompose,
)
from .speed_limit import (
    EfficiencyReport,
    Hamiltonian2,
    Route,
    SynthesisResult,
    basis_rotation_to_pole,
    efficiency,
    energy_uncertainty,
    evolve_state,
    evolution_operator,
    geodesic_state,
    synthesize_max_uncertainty,
    synthesize_min_time,
)

__all__ = [name for name in dir() if not name.startswith("_")]
