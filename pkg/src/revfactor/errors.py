"""Exception hierarchy.

Domain errors (bad specs, wrong growth class, ...) derive from
:class:`RevFactorError`; malformed input files derive from
:class:`FormatError`, a subclass the CLI maps to a different exit status.
"""


class RevFactorError(Exception):
    """Base class for every error raised by this package."""


class InvalidPattern(RevFactorError, ValueError):
    pass


class AlphabetMismatch(RevFactorError, ValueError):
    pass


class InvalidAutomaton(RevFactorError, ValueError):
    pass


class LanguageEmpty(RevFactorError):
    pass


class InvalidSpec(RevFactorError, ValueError):
    pass


class CapExceeded(RevFactorError):
    pass


class EnumerationTooLarge(RevFactorError):
    pass


class NotFinite(RevFactorError):
    pass


class NoBirecurrentState(RevFactorError):
    pass


class InsufficientTerms(RevFactorError):
    pass


class NoRecurrenceFound(RevFactorError):
    pass


class NoRealRootAboveOne(RevFactorError):
    pass


class RootCrossCheckFailed(RevFactorError):
    pass


class NotConverged(RevFactorError):
    pass


class EmptyWord(RevFactorError, ValueError):
    pass


class NotExponential(RevFactorError):
    pass


class NoInfinitePath(RevFactorError):
    pass


class FormatError(RevFactorError):
    """Input text could not be turned into an automaton."""


class ParseError(FormatError):
    pass


class NondeterministicInput(FormatError):
    pass


class MissingStart(FormatError):
    pass


class WitnessInvalid(RevFactorError):
    """A generated witness failed its own postcondition (internal error)."""
