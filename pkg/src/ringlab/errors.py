"""Exception hierarchy shared by every ringlab module."""


class RingError(Exception):
    """Base class for all ringlab errors."""


class InvalidRing(RingError):
    pass


class UnsupportedModulus(RingError):
    pass


class TooLarge(RingError):
    """A size cap would be exceeded by the requested construction or scan."""


class InvalidIdeal(RingError):
    pass


class InvalidQuotient(RingError):
    pass


class NotAHomomorphism(RingError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotWellDefined(RingError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSemiprime(RingError):
    pass


class BaseNotField(RingError):
    pass


class ReducibleImage(RingError):
    def __init__(self, message, factors=None):
        super().__init__(message)
        self.factors = factors


class NotPrime(RingError):
    pass


class NotPrimitive(RingError):
    def __init__(self, message, factors=None):
        super().__init__(message)
        self.factors = factors


class Finding(RingError):
    """A computed fact contradicts an expected theorem; carries the witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonUniqueMaximal(Finding):
    pass


class ConductorNotMaximal(Finding):
    pass


class MissingWitness(Finding):
    pass


class InconsistentReport(Finding):
    pass


class RingSyntaxError(RingError):
    """Ring-expression syntax error with a 1-based line/column position."""

    def __init__(self, message, line=1, column=1, text=""):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
        self.text = text
