"""Two-spin synthetic-lattice simulator.

A giant spin S exchanging quanta with a single spin-1/2 realizes an
inhomogeneous two-band chain in the spin-projection "dimension": it hosts
protected edge spin states with a bulk-edge correspondence, pumps one quantum
of spin per adiabatic drive cycle when the parameter circuit encloses the
transition point, and undergoes a ground-state quantum phase transition when
collective attractive interactions pass a critical strength.
"""

from .hilbert import (
    BasisIndex,
    HermitianOperator,
    ModelParams,
    StateVector,
    basis_states,
    build_h1,
    build_h2,
    build_h3,
    build_pauli,
    build_sz,
    flat_index,
    ladder_coeff,
    n_values,
)
from .spectra import EigenSystem, chiral_residual, edge_weight, eigh, midgap_states, spectrum_scan
from .topology import (
    CRITICAL,
    BlochSample,
    WindingProfile,
    WindingUndefinedError,
    bulk_average_winding,
    local_winding_profile,
    mf_bloch,
    mf_winding,
    profile_drop_location,
    ssh_winding,
    transition_midpoint,
    winding_operator,
    winding_transition_scan,
)
from .dynamics import (
    DegenerateGroundStateError,
    DriveCycle,
    PropagationError,
    Trajectory,
    current_expectation,
    displacement,
    drive_cycle_eval,
    ground_state,
    propagate,
)
from .manybody import (
    QptScan,
    cycle_min_crit,
    ground_band_energy,
    lambda_crit,
    mf_ground_energy,
    qpt_scan,
    quartic_coeffs,
)

__version__ = "0.1.0"
