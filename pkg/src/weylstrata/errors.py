"""Exception hierarchy shared across the package.

Every hard failure raises a subclass of EngineError so the CLI can map
any internal failure to exit code 1 while argparse handles usage errors
with exit code 2.
"""


class EngineError(Exception):
    """Base class for all computational failures."""


class InvalidTypeError(EngineError):
    """A Cartan type string or (family, rank) combination is not valid."""


class TableFormatError(EngineError):
    """A data file does not conform to its documented format."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class DataInconsistencyError(EngineError):
    """Bundled data contradicts a computed invariant (signals corruption)."""


class UnsupportedDataError(EngineError):
    """No bundled data exists for the requested (type, characteristic)."""


class BudgetExceededError(EngineError):
    """A backtrack search exceeded its node budget without an answer."""


class UnknownLabelError(EngineError):
    """An irreducible-character label does not occur in the table."""

    def __init__(self, label, candidates=()):
        msg = "unknown irrep label %r" % (label,)
        if candidates:
            msg += "; nearest candidates: %s" % ", ".join(candidates)
        super().__init__(msg)
        self.label = label
        self.candidates = tuple(candidates)
