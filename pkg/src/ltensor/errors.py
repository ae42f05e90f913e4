"""Exception hierarchy shared across the package."""


class LTensorError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(LTensorError):
    """Operand dimensions are incompatible."""


class ModeError(LTensorError):
    """A mode index is outside the tensor's order."""


class TransformError(LTensorError):
    """A transform spec does not match the tensor it is applied to."""


class NumericConsistencyError(LTensorError):
    """A real-output contract was violated (imaginary residual too large)."""


class OracleScaleError(LTensorError):
    """A brute-force oracle was asked to build a matrix beyond its size guard."""


class StructureError(LTensorError):
    """A matrix lacks the block structure required to invert it to a tensor."""


class UnsupportedSpecError(LTensorError):
    """The operation's theory requires a unitary-scaled transform spec."""


class ParameterError(LTensorError):
    """A numeric parameter is outside its valid range."""


class FormatError(LTensorError):
    """A serialized tensor container or frame file is malformed."""
