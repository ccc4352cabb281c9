"""Exception hierarchy."""


class ToricJetsError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(ToricJetsError):
    """Vertices do not span the ambient space."""


class ValidationError(ToricJetsError):
    """A polytope invariant failed (duplicate or non-extreme vertex, ...)."""


class ParseError(ToricJetsError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotSmoothAtVertex(ToricJetsError):
    def __init__(self, vertex: int, message: str = ""):
        self.vertex = vertex
        super().__init__(message or f"polytope is not smooth at vertex {vertex}")


class NotSmooth(ToricJetsError):
    """Raised by operations that require a smooth polytope."""


class EmptyChop(ToricJetsError):
    """The halfspace meets the polytope in a lower-dimensional set."""


class NonLatticeChop(ToricJetsError):
    """The halfspace cut creates a vertex that is not a lattice point."""


class NotDivisible(ToricJetsError):
    """Shrinking by k produced a non-integral vertex."""


class SliceDimensionMismatch(ToricJetsError):
    """Cayley slices have different dimensions."""


class InvalidParams(ToricJetsError):
    """Bad generator parameters."""
