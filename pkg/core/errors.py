# core/errors.py


class LabError(Exception):
    """Base class for every error raised by the laboratory"""
    pass


class InvalidExample(LabError, ValueError):
    """Raised when a value is not a natural number"""
    pass


class UnsupportedPair(LabError):
    """Raised when a pair of language forms has no structural decision rule"""
    pass


class LanguageParseError(LabError, ValueError):
    """Raised when a language rendering cannot be parsed"""
    pass


class TranscriptError(LabError, ValueError):
    """Raised when a transcript order cannot enumerate its source"""
    pass


class InterfaceViolation(LabError):
    """Raised when a (query, response) pair is not allowed by the oracle interface"""
    pass
