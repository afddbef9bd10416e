"""Junction solver for isentropic gas networks with an artificial-density coupling."""
from .errors import (
    CFLViolation,
    ConsistencyError,
    DomainError,
    GasJunctionError,
    NoConvergence,
    NonConvergedQuadrature,
    NoSubsonicSolution,
    ProblemFileError,
    VacuumEndpoint,
)
from .gas import GasLaw, State, classify, riemann_invariants
from .junction import (
    CouplingKind,
    JunctionProblem,
    JunctionSolution,
    dissipation_report,
    solve_artificial_density,
    solve_junction,
    solve_rival,
)
from .waves import sample, solve_riemann

__all__ = [
    "CFLViolation",
    "ConsistencyError",
    "CouplingKind",
    "DomainError",
    "GasJunctionError",
    "GasLaw",
    "JunctionProblem",
    "JunctionSolution",
    "NoConvergence",
    "NoSubsonicSolution",
    "NonConvergedQuadrature",
    "ProblemFileError",
    "State",
    "VacuumEndpoint",
    "classify",
    "dissipation_report",
    "riemann_invariants",
    "sample",
    "solve_artificial_density",
    "solve_junction",
    "solve_riemann",
    "solve_rival",
]
