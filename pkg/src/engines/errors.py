"""Error types raised by the hyperdyn engines.

Every error is a ValueError so callers that only care about bad input can catch
one type. The CLI maps ResourceBoundError to exit code 3 and everything else to 2.
"""

from typing import Optional


class HyperdynError(ValueError):
    """Base class for all engine errors."""


class EmptyCompactSetError(HyperdynError):
    def __init__(self, message: str = "empty compact set") -> None:
        super().__init__(message)


class GapUndefinedError(HyperdynError):
    def __init__(self, message: str = "gap undefined") -> None:
        super().__init__(message)


class SpaceValidationError(HyperdynError):
    """A space description violates the schema or a structural invariant."""


class TreeValidationError(HyperdynError):
    """A space tree violates the schema or a structural invariant."""


class NotIsolatedError(HyperdynError):
    def __init__(self, point: object) -> None:
        super().__init__(f"not isolated: {point}")
        self.point = point


class NotPeriodicError(HyperdynError):
    def __init__(self, point: object) -> None:
        super().__init__(f"not periodic: {point}")
        self.point = point


class NotHyperExpansiveError(HyperdynError):
    """expansive_delta was asked for a system whose verdict is Not."""


class PointNotInSpaceError(HyperdynError):
    def __init__(self, point: object) -> None:
        super().__init__(f"point not in X: {point}")
        self.point = point


class ResourceBoundError(HyperdynError):
    """A window, depth or horizon exceeds the configured bound."""


class CapExceededError(HyperdynError):
    def __init__(self, cap: int, lower_bound: int) -> None:
        super().__init__(
            f"compact invariant set count exceeds cap {cap} (at least {lower_bound})"
        )
        self.cap = cap
        self.lower_bound = lower_bound


class OracleInputError(HyperdynError):
    """Bad horizon, schedule or subset passed to the oracle."""

    def __init__(self, message: str, detail: Optional[str] = None) -> None:
        super().__init__(message if detail is None else f"{message}: {detail}")


class ConfigurationError(HyperdynError):
    """An environment variable holds a value the engines cannot use."""


class RankConsistencyError(HyperdynError):
    """The accumulation-point count and the limit degree disagree on admissibility."""
