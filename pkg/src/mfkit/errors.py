"""Exception hierarchy shared by all mfkit modules."""


class MFError(Exception):
    """Base class for mfkit errors."""


class DimensionMismatch(MFError, ValueError):
    pass


class UndefinedSplit(MFError, ValueError):
    pass


class ParseError(MFError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EmptyInput(MFError, ValueError):
    pass


class SizeMismatch(MFError):
    pass


class TargetMismatch(MFError):
    pass


class NotAFactorization(MFError):
    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class CommutationFailure(MFError):
    pass


class NotAMorphism(MFError):
    def __init__(self, message: str, condition: str):
        super().__init__(message)
        self.condition = condition


class ChainMismatch(MFError):
    pass


class NoValidPlacement(MFError):
    pass


class WitnessNotFound(MFError):
    pass


class ShapeInfeasible(MFError, ValueError):
    pass
