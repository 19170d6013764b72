"""Equivariant index computations (compiled core in _equivix)."""

from ._equivix import (
    CliffordAlgebra,
    EquivixError,
    Symbol,
    chern_integrand,
    fixed_space,
    graph_projection,
    hat_projection,
    index,
    rho_hbar_gaussian,
    run,
    symbol,
)

__all__ = [
    "CliffordAlgebra",
    "EquivixError",
    "Symbol",
    "chern_integrand",
    "fixed_space",
    "graph_projection",
    "hat_projection",
    "index",
    "rho_hbar_gaussian",
    "run",
    "symbol",
]
