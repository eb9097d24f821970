"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain where an operation is defined."""


class InsufficientPrecision(DomainError):
    """The available bits do not decide the question being asked."""


class HitCriticalPoint(DomainError):
    """An orbit point could not be separated from the critical point 0."""


class EscapeError(DomainError):
    """The orbit left [-2, 2]; the parameter is outside the real slice."""


class NotInR(DomainError):
    pass


class NonConvergence(DomainError):
    pass


class DegenerateFit(DomainError):
    pass


class UnresolvedLocation(DomainError):
    pass
