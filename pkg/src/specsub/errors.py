"""Exception hierarchy shared by all modules."""


class SpecSubError(Exception):
    """Base class for every error raised by this package."""


class GraphError(SpecSubError, ValueError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class InvalidParams(SpecSubError, ValueError):
    pass


class InvalidK(InvalidParams):
    pass


class SizeCapExceeded(SpecSubError):
    pass


class DomainError(SpecSubError, ValueError):
    pass


class MultiplicityUnderflow(SpecSubError):
    pass


class ConvergenceFailure(SpecSubError):
    pass


class NumericalRankFailure(SpecSubError):
    pass


class SingularSystem(SpecSubError):
    pass


class DegenerateEigenvalue(SpecSubError):
    pass


class RefMismatch(SpecSubError, ValueError):
    pass


class ZeroMultiplicityError(SpecSubError):
    pass


class RoundingAmbiguity(SpecSubError):
    pass


class UnsupportedK(SpecSubError, ValueError):
    pass
