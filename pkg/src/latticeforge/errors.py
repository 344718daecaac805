"""Exception taxonomy.

Every error carries a short machine-readable ``code`` which the CLI echoes
back in its error payload.
"""


class LatticeError(ValueError):
    code = "LatticeError"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details


class NotSquare(LatticeError):
    code = "NotSquare"


class NonSymmetric(LatticeError):
    code = "NonSymmetric"


class EmptyMatrix(LatticeError):
    code = "EmptyMatrix"


class Degenerate(LatticeError):
    code = "Degenerate"


class ZeroScale(LatticeError):
    code = "ZeroScale"

    def __init__(self, message="", position=None):
        super().__init__(message, position=position)
        self.position = position


class OddLattice(LatticeError):
    code = "OddLattice"


class DimensionMismatch(LatticeError):
    code = "DimensionMismatch"


class NotTwoElementary(LatticeError):
    code = "NotTwoElementary"


class GroupTooLarge(LatticeError):
    code = "GroupTooLarge"


class NotIsotropic(LatticeError):
    code = "NotIsotropic"


class NotFiniteIndex(LatticeError):
    code = "NotFiniteIndex"


class WrongSignature(LatticeError):
    code = "WrongSignature"


class NonPositiveD(LatticeError):
    code = "NonPositiveD"


class InvalidDiscriminant(LatticeError):
    code = "InvalidDiscriminant"


class NotPositiveDefinite(LatticeError):
    code = "NotPositiveDefinite"


class NotHalfScalable(LatticeError):
    code = "NotHalfScalable"


class RankTooLarge(LatticeError):
    code = "RankTooLarge"


class UnknownName(LatticeError):
    code = "UnknownName"


class BadParameter(LatticeError):
    code = "BadParameter"


class ExpressionSyntaxError(LatticeError):
    """Malformed lattice expression; ``position`` is the 0-based offset."""

    code = "SyntaxError"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}", position=position)
        self.position = position


class InvalidArgument(LatticeError):
    code = "InvalidArgument"
