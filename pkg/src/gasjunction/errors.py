"""Exception hierarchy shared by the solver modules."""


class GasJunctionError(Exception):
    """Base class for all library errors."""


class DomainError(GasJunctionError, ValueError):
    """Input lies outside the admissible state space or operation domain."""


class VacuumEndpoint(DomainError):
    """A wave curve was queried beyond its vacuum end."""


class NoConvergence(GasJunctionError, RuntimeError):
    """A bracketed root search failed; indicates a defect for valid inputs."""


class NonConvergedQuadrature(GasJunctionError, RuntimeError):
    pass


class NoSubsonicSolution(GasJunctionError, RuntimeError):
    """A rival coupling could not be solved inside the subsonic region."""


class ConsistencyError(GasJunctionError, RuntimeError):
    """Two independent classifications of the same object disagree."""


class CFLViolation(GasJunctionError, ValueError):
    pass


class ProblemFileError(GasJunctionError, ValueError):
    """A problem file failed to parse or validate."""
