"""Exception types.

``PreconditionError`` subclasses map to CLI exit code 2, ``ConsistencyError``
subclasses to exit code 3.
"""


class SLError(Exception):
    pass


class PreconditionError(SLError, ValueError):
    pass


class ConsistencyError(SLError, RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""


class VanishingLine(PreconditionError):
    pass


class InvalidDisk(PreconditionError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class NotTrV(PreconditionError):
    pass


class NotSpanning(PreconditionError):
    pass


class NotConvex(PreconditionError):
    pass


class NotNaturalEdge(PreconditionError):
    pass


class NoPlateau(PreconditionError):
    pass


class NotVertical(PreconditionError):
    pass


class NotConvexImage(PreconditionError):
    pass


class NotBoundaryEmbedding(PreconditionError):
    pass


class Obstructive(PreconditionError):
    def __init__(self, edges):
        self.edges = [tuple(e) for e in edges]
        super().__init__(f"obstructive spanning simplices: {self.edges}")


class PreconditionViolated(PreconditionError):
    def __init__(self, clause, detail=""):
        self.clause = clause
        super().__init__(f"{clause}: {detail}" if detail else clause)


class XNotInProjection(PreconditionError):
    pass


class DimensionTooHigh(PreconditionError):
    pass


class UnboundedPolytope(PreconditionError):
    pass


class RayUnbounded(PreconditionError):
    pass


class GenerationFailed(SLError):
    pass


class NoKeyFound(ConsistencyError):
    pass


class GluingMismatch(ConsistencyError):
    pass


class ParseError(SLError, ValueError):
    """Malformed input file; ``line``/``column`` point at the problem when known."""

    def __init__(self, message, line=None, column=None, path=None):
        self.line, self.column, self.path = line, column, path
        where = "" if line is None else f" (line {line}, column {column})"
        prefix = f"{path}: " if path else ""
        super().__init__(f"{prefix}{message}{where}")
