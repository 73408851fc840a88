"""Error hierarchy. Exit codes: 1 validation/parse, 2 resource, 3 capability."""


class WfoeilError(Exception):
    exit_code = 1


class ValidationError(WfoeilError):
    """Ill-formed system/formula: bad references, layer violations, proviso breaches."""
    exit_code = 1

    def __init__(self, message, span=None):
        self.span = span
        if span is not None:
            message = "%s: %s" % (span, message)
        super().__init__(message)


class ParseError(ValidationError):
    """Syntax error with source position."""


class ResourceError(WfoeilError):
    """A configured budget (states, transitions, alphabet size, word count) was exceeded."""
    exit_code = 2


class CapabilityError(WfoeilError):
    """The requested operation needs a semiring capability the chosen one lacks."""
    exit_code = 3
