"""Exception hierarchy shared by all modules."""


class NonformalError(Exception):
    """Base class for every error raised by this package."""


class ContractViolation(NonformalError, ValueError):
    """An operation was called outside its documented preconditions."""


class CutoffExceeded(NonformalError):
    """A result would live above the degree cutoff of the structure in use."""


class NotSimplyConnected(ContractViolation):
    pass


class MasseyUndefined(NonformalError):
    """A cup-product hypothesis of a Massey product fails."""


class NonzeroIndeterminacy(NonformalError):
    pass


class FormalityRefusal(NonformalError):
    """Requested manifold dimension is covered by the formality bound."""


class NotRadial(ContractViolation):
    pass


class BasepointConditionViolated(ContractViolation):
    pass


class ParseError(NonformalError, ValueError):
    """Malformed input text; carries 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
