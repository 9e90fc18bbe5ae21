"""Exception hierarchy.

Errors fall into three groups that the CLI maps onto exit codes: bad input
(exit 2), exhausted budgets (exit 3), and internal contradictions that can
only fire on non-median input or on a bug.
"""


class CubeError(Exception):
    pass


# -- invalid input ----------------------------------------------------------

class InvalidInput(CubeError):
    pass


class SchemaError(InvalidInput):
    """A document failed strict parsing; ``path`` locates the offending value."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class NotMedianGraph(InvalidInput):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"not a median graph; violating triple {triple!r}")


class UnknownGenerator(InvalidInput):
    pass


class InvalidArguments(InvalidInput):
    pass


class WindowRequired(InvalidInput):
    pass


class SizeExceeded(InvalidInput):
    pass


class PreconditionViolated(InvalidInput):
    pass


# -- budgets ----------------------------------------------------------------

class BudgetExceeded(CubeError):
    pass


class GenerationFailed(CubeError):
    pass


# -- contradictions ---------------------------------------------------------

class MedianViolation(CubeError):
    def __init__(self, triple, count):
        self.triple = triple
        self.count = count
        super().__init__(f"triple {triple!r} has {count} medians")


class DimensionViolation(CubeError):
    pass


class InternalError(CubeError):
    pass


class NotFound(CubeError):
    pass


class HellyViolation(CubeError):
    pass


class NoInvariantCube(CubeError):
    pass


class FilteringViolation(CubeError):
    pass
