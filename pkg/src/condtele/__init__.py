"""Continuous-variable teleportation with conditioned two-mode squeezed resources."""

from .errors import ConvergenceError, InvalidParameter, NonFiniteIntegrand, TruncationError
from .kinds import ResourceKind
from .ndps import NdpsDistribution, NdpsPoint, input_coeffs, ndps_distribution, ndps_fidelity_curve, ndps_point
from .numerics import (
    DEFAULT_POLICY,
    QuadratureSpec,
    TruncationPolicy,
    TruncationWarning,
    coherent_amplitudes,
    displacement_matrix,
    integrate_plane,
    log_factorial,
    truncation_level,
)
from .oracle import TruncatedKet, apply_transfer, nd_lattice_probabilities, oracle_point
from .resources import (
    HeraldProbability,
    SchmidtResource,
    build_resource,
    herald_probability,
    joint_phase_density,
    photon_number_distribution,
    von_neumann_entropy,
)
from .states import Cat, Coherent, FockCoeffs
from .teleport import (
    BoundaryScan,
    FidelityResult,
    GainScan,
    TeleportConfig,
    TeleportPoint,
    average_fidelity,
    boundary_scan,
    cat_point,
    coherent_point,
    default_quadrature,
    gain_gamma_scan,
    transfer_point,
)

__version__ = "0.1.0"
