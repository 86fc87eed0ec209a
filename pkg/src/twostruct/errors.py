"""Exception types raised by the library."""


class TwoStructureError(Exception):
    """Base class for every error raised by twostruct."""


class UnknownColor(TwoStructureError):
    pass


class UnusedColor(TwoStructureError):
    pass


class BadPartnerInvolution(TwoStructureError):
    pass


class StarViolation(TwoStructureError):
    pass


class NotATournament(TwoStructureError):
    pass


class VertexSetMismatch(TwoStructureError):
    pass


class EmptySet(TwoStructureError):
    pass


class TooLarge(TwoStructureError):
    pass


class NotAFactorization(TwoStructureError):
    pass


class TooSmall(TwoStructureError):
    pass


class NotReversible(TwoStructureError):
    pass


class InternalMismatch(TwoStructureError):
    """Two independent computations of the same object disagree."""


class NotAnExtension(TwoStructureError):
    pass


class NotPrimitive(TwoStructureError):
    pass


class NotEComplete(TwoStructureError):
    pass


class TooFewColors(TwoStructureError):
    pass


class PreconditionFailed(TwoStructureError):
    pass


class PowerMismatch(TwoStructureError):
    pass


class NotComplete(TwoStructureError):
    pass


class NotFaithful(TwoStructureError):
    pass


class InternalProofViolation(TwoStructureError):
    """A construction that must succeed produced a structure failing verification."""


class BudgetExceeded(TwoStructureError):
    pass


class ParseError(TwoStructureError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
