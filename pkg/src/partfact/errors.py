"""Exception hierarchy shared by all analysis modules."""


class PartfactError(Exception):
    """Base class for every error raised by this library."""


class InputError(PartfactError):
    """Malformed user input: bad symbols, unparsable regex, bad documents."""


class RegexSyntaxError(InputError):
    """Regex text does not conform to the dialect.

    Carries the 0-based position of the offending character.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class AlphabetMismatchError(InputError):
    """Two values built over different alphabets were combined."""


class StateCapExceededError(PartfactError):
    """An automaton construction would exceed the configured state cap."""


class PreconditionError(PartfactError):
    """An operation was called outside its stated domain.

    Examples: maximality query on a dense code, factorizing a word that is
    not a message, an invalid class sequence, a partition that is not coding.
    """
