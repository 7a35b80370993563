"""Tomographic representations of quantum and classical states.

The package tests whether candidate functions are optical or symplectic
tomograms, and whether tomographic evolution preserves normalization:
``core`` holds grids, eigenfunctions and the state catalog, ``transforms``
maps between representations, ``validation`` runs membership checks,
``conservation`` analyzes moment harmonics and fluxes, ``evolution``
propagates states, and ``cli`` exposes all of it as a command line tool.
"""

from .conservation import (
    HarmonicFit,
    MomentProfile,
    classical_rho_extraction,
    harmonic_residual,
    hermite_class_projection,
    moment_panel,
    moment_profile,
    normalization_flux_cubic,
    ode_residual,
    symplectic_moment_residual,
)
from .core import (
    DEFAULT_N_MAX,
    AnalyticSource,
    CatalogEntry,
    FockMatrix,
    GridSpec,
    OpticalTomogramGrid,
    StateSpec,
    SymplecticView,
    WignerGrid,
    analytic_source,
    available_states,
    catalog_eval,
    catalog_fock,
    catalog_optical_grid,
    catalog_wigner_grid,
    fock_optical_eval,
    fock_optical_grid,
    fock_symplectic_eval,
    fock_wigner_eval,
    fock_wigner_grid,
    hermite_functions,
    load_grid,
    resolve_entry,
    save_grid,
)
from .evolution import (
    EvolutionTrace,
    PolynomialPotential,
    drift_experiment,
    evolve_fock,
    evolve_harmonic_tomogram,
    evolve_liouville,
    evolve_moyal,
    stable_dt,
)
from .transforms import (
    CharacteristicSamples,
    characteristic_function,
    characteristic_grid,
    euler_defect,
    inverse_radon_optical,
    load_characteristic,
    optical_to_symplectic,
    radon_optical,
    save_characteristic,
    symplectic_to_optical,
    wigner_from_characteristic,
)
from .validation import (
    CheckReport,
    PointSet,
    check_hirschman,
    check_positivity,
    check_radon_fixed_point,
    check_structural,
    pure_state_overlap,
    shannon_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticSource",
    "CatalogEntry",
    "CharacteristicSamples",
    "CheckReport",
    "DEFAULT_N_MAX",
    "EvolutionTrace",
    "FockMatrix",
    "GridSpec",
    "HarmonicFit",
    "MomentProfile",
    "OpticalTomogramGrid",
    "PointSet",
    "PolynomialPotential",
    "StateSpec",
    "SymplecticView",
    "WignerGrid",
    "analytic_source",
    "available_states",
    "catalog_eval",
    "catalog_fock",
    "catalog_optical_grid",
    "catalog_wigner_grid",
    "characteristic_function",
    "characteristic_grid",
    "check_hirschman",
    "check_positivity",
    "check_radon_fixed_point",
    "check_structural",
    "classical_rho_extraction",
    "drift_experiment",
    "euler_defect",
    "evolve_fock",
    "evolve_harmonic_tomogram",
    "evolve_liouville",
    "evolve_moyal",
    "fock_optical_eval",
    "fock_optical_grid",
    "fock_symplectic_eval",
    "fock_wigner_eval",
    "fock_wigner_grid",
    "harmonic_residual",
    "hermite_class_projection",
    "hermite_functions",
    "inverse_radon_optical",
    "load_characteristic",
    "load_grid",
    "moment_panel",
    "moment_profile",
    "normalization_flux_cubic",
    "ode_residual",
    "optical_to_symplectic",
    "pure_state_overlap",
    "radon_optical",
    "resolve_entry",
    "save_characteristic",
    "save_grid",
    "shannon_entropy",
    "stable_dt",
    "symplectic_moment_residual",
    "symplectic_to_optical",
    "wigner_from_characteristic",
    "__version__",
]
