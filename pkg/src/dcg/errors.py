class GraphError(ValueError):
    """Malformed graph input or a query naming an unknown vertex."""


class OracleCapError(RuntimeError):
    """An exponential-time routine was asked to run above its vertex cap."""
