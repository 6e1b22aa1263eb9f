"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the documented domain of an operation."""


class NotFoundError(LookupError):
    """Name does not resolve in a registry (catalog, operators, suites)."""


class RouteUnavailableError(LookupError):
    """Requested computational route is not implemented for the operator."""


class FallbackRouteWarning(UserWarning):
    """A kernel route fell back to a composition route (series validity)."""
