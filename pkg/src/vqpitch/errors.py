"""Exception types shared across the package."""


class VqpitchError(Exception):
    """Base class for all package errors."""


class InvalidConfig(VqpitchError):
    pass


class NyquistViolation(InvalidConfig):
    pass


class EmptyAudio(VqpitchError):
    pass


class ShiftOutOfRange(VqpitchError):
    pass


class ChunkSizeMismatch(VqpitchError):
    pass


class ShapeMismatch(VqpitchError):
    pass


class LengthMismatch(ShapeMismatch):
    pass


class NonFiniteActivation(VqpitchError):
    pass


class NonFiniteLoss(VqpitchError):
    pass


class DegenerateDistribution(VqpitchError):
    pass


class ConfigMismatch(VqpitchError):
    pass


class CalibrationFailed(VqpitchError):
    pass


class NonPositiveFrequency(VqpitchError):
    pass


class CoverageGap(VqpitchError):
    pass


class ParseError(VqpitchError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class AliasRisk(VqpitchError):
    pass


class CheckpointFormatError(VqpitchError):
    pass
