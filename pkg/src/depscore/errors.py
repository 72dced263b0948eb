"""Exception hierarchy.

Parse failures derive from :class:`ParseError`, engine failures from
:class:`EngineError`; the CLI maps the two families to distinct exit codes.
"""


class DepscoreError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DepscoreError, ValueError):
    """Input file could not be turned into valid records."""


class EmptyFile(ParseError):
    pass


class MalformedRow(ParseError):
    pass


class NegativeDuration(ParseError):
    pass


class MissingColumn(ParseError):
    pass


class ScoreOutOfRange(ParseError):
    pass


class InconsistentBinary(ParseError):
    pass


class InconsistentItems(ParseError):
    pass


class DuplicateToken(ParseError):
    pass


class NonPositiveWeight(ParseError):
    pass


class BadPosClass(ParseError):
    pass


class EmptyList(ParseError):
    pass


class EmptySession(DepscoreError, ValueError):
    pass


class BadK(DepscoreError, ValueError):
    pass


class OutOfRange(DepscoreError, ValueError):
    pass


class NoOverlap(DepscoreError, ValueError):
    pass


class EngineError(DepscoreError):
    """A sentiment engine failed to produce a result."""


class CacheMiss(EngineError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class TransportError(EngineError):
    pass


class MalformedReply(EngineError):
    pass


class FingerprintMismatch(EngineError):
    pass
