"""Domain types, eigenfunction machinery and the analytic state catalog."""

from .catalog import (
    DEFAULT_N_MAX,
    AnalyticSource,
    CatalogEntry,
    StateSpec,
    analytic_source,
    available_states,
    catalog_eval,
    catalog_fock,
    catalog_optical_grid,
    catalog_wigner_grid,
    resolve_entry,
)
from .fock import (
    annihilation,
    fock_optical_eval,
    fock_optical_grid,
    fock_symplectic_eval,
    fock_wigner_eval,
    fock_wigner_grid,
    momentum_operator,
    number_operator,
    position_operator,
)
from .grids import (
    FockMatrix,
    GridSpec,
    OpticalTomogramGrid,
    SymplecticView,
    WignerGrid,
    load_grid,
    polar_decompose,
    save_grid,
)
from .hermite import hermite_functions, hermite_values

__all__ = [
    "DEFAULT_N_MAX",
    "AnalyticSource",
    "CatalogEntry",
    "FockMatrix",
    "GridSpec",
    "OpticalTomogramGrid",
    "StateSpec",
    "SymplecticView",
    "WignerGrid",
    "analytic_source",
    "annihilation",
    "available_states",
    "catalog_eval",
    "catalog_fock",
    "catalog_optical_grid",
    "catalog_wigner_grid",
    "fock_optical_eval",
    "fock_optical_grid",
    "fock_symplectic_eval",
    "fock_wigner_eval",
    "fock_wigner_grid",
    "hermite_functions",
    "hermite_values",
    "load_grid",
    "momentum_operator",
    "number_operator",
    "polar_decompose",
    "position_operator",
    "resolve_entry",
    "save_grid",
]
