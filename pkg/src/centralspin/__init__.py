"""Exact negativity dynamics of a qubit hyperfine-coupled to a uniform spin bath."""

from .blocks import (
    BlockEigensystem,
    PhysicalParams,
    assemble_block,
    block_eigensystem,
    sector_eigensystem,
    sector_hamiltonian,
    unpaired_levels,
)
from .constants import (
    DEFAULT_A_UEV,
    DEFAULT_G_FACTOR,
    DEFAULT_PRODUCT_DIM_CAP,
    HBAR_UEV_NS,
    MU_B_UEV_PER_T,
    ORACLE_DIM_CAP,
)
from .dynamics import (
    JointState,
    QubitState,
    SectorPropagator,
    SectorState,
    evolve,
    initial_state,
    reduced_qubit_state,
)
from .errors import DimensionCapError, NeverEntangledError, NoReturnToZeroError
from .experiments import (
    DisentanglementTime,
    FieldBirthReport,
    FitReport,
    NegativityEvaluator,
    NegativityTrace,
    ParityReport,
    SweepPoint,
    field_birth_report,
    find_tau,
    fit_scaling,
    parity_report,
    single_nucleus_tau_estimate,
    sweep,
    trace_negativity,
)
from .materials import (
    DotGeometry,
    Isotope,
    MaterialTable,
    average_coupling,
    effective_cell_count,
    gaas_table,
    load_material_table,
)
from .negativity import (
    NegativityResult,
    isotropic_bound,
    negativity,
    negativity_direct_sum,
    partial_transpose_qubit,
    sector_negativity,
)
from .oracle import (
    build_full_hamiltonian,
    oracle_negativity_trace,
    oracle_negativity_values,
    oracle_reduced_qubit,
    oracle_spectrum,
)
from .sectors import BathSpec, SectorEntry, SectorTable, enumerate_sectors, multiplicity_closed_form

__version__ = "0.1.0"
