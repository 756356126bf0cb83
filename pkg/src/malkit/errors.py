"""Exception types shared across the toolkit."""


class MalkitError(Exception):
    pass


class DomainError(MalkitError):
    """An operation left the defined domain (zero denominator, negative radicand, ...)."""


class ParseError(MalkitError):
    """No answer grammar rule applies.

    position is the character offset where parsing gave up.
    """

    def __init__(self, message, position=0):
        super().__init__(message)
        self.position = position


class UnknownId(MalkitError):
    pass


class DuplicateId(MalkitError):
    pass


class ValidationFailed(MalkitError):
    def __init__(self, template, reason):
        super().__init__(f"{template}: {reason}")
        self.template = template
        self.reason = reason


class UnknownTemplate(MalkitError):
    pass


class ConstraintViolation(MalkitError):
    pass


class MalruleNotTriggered(MalkitError):
    """The parameters never exercise the buggy branch of the malrule."""


class ExhaustedRejection(MalkitError):
    """No satisfying, non-coincident parameter assignment within the rejection budget."""


class ConditionMismatch(MalkitError):
    pass


class TransportError(MalkitError):
    pass


class AuthError(MalkitError):
    pass


class MalformedResponse(MalkitError):
    pass


class LineageError(MalkitError):
    """A downstream artifact does not match the recorded hash of its input."""
