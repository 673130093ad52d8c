#twotime exceptions
class TwoTimeException(Exception): pass
class ValidationError(TwoTimeException): pass
class DimensionMismatch(ValidationError): pass

class DomainError(TwoTimeException): pass
class ParameterError(TwoTimeException): pass
class SimulationError(TwoTimeException): pass


class ParseError(TwoTimeException):
    """
    raised by the observable / vector parsers, carries the 1-based column
    the problem was found at
    """

    def __init__(self, message, position):
        self.message = message
        self.position = position
        super(ParseError, self).__init__('{} at position {}'.format(message, position))
