"""Exception hierarchy shared by every gencliff module."""


class GencliffError(Exception):
    """Base class for all library errors."""


class ParameterError(GencliffError, ValueError):
    """Invalid algebra parameters, index ranges or size-cap violations."""


class ContextMismatchError(GencliffError, ValueError):
    """Operands belong to different algebras."""


class SingularElementError(GencliffError, ArithmeticError):
    """Raised when inverting an element whose determinant is (numerically) zero."""

    def __init__(self, det: complex, threshold: float):
        self.det = det
        self.threshold = threshold
        super().__init__(f"element is singular: |Det| = {abs(det):.3e} <= {threshold:.3e}")


class ParseError(GencliffError):
    """Lexing or parsing failure, carrying the offending source position."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class EvaluationError(GencliffError):
    """Expression evaluation failure (type errors, bad arguments, overflow)."""
