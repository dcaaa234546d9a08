"""Exception types shared by the library and the command line front end."""


class AlgebraError(ValueError):
    """Base class for domain errors; the CLI maps it to exit code 3."""


class ModelMismatchError(AlgebraError):
    """Operands belong to different field models."""


class SizeBoundError(AlgebraError):
    """A configured enumeration or search bound was exceeded."""


class HypothesisError(AlgebraError):
    """A mathematical precondition of an operation does not hold."""


class DescriptorError(AlgebraError):
    """Malformed model descriptor, class label or field element (exit code 2)."""
