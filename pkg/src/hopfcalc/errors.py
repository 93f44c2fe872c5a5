"""Exception hierarchy.

Mathematical failures derive from :class:`MathError` (the CLI maps them to
exit code 3); malformed input derives from :class:`InputError` (exit 2).
"""


class HopfCalcError(Exception):
    pass


class MathError(HopfCalcError):
    pass


class NoAntipode(MathError):
    pass


class SizeLimit(MathError):
    pass


class PartitionMismatch(MathError):
    pass


class IndexOutOfRange(MathError, IndexError):
    pass


class OrderMismatch(MathError):
    pass


class NonzeroConstantTerm(MathError):
    pass


class NotAMorphism(MathError):
    pass


class DimensionMismatch(MathError):
    pass


class InputError(HopfCalcError, ValueError):
    pass


class ParseError(InputError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class UnknownLetter(ParseError):
    pass


class MalformedMatrix(ParseError):
    pass
