"""Exception types shared by the library and the CLI."""


class RibbonError(Exception):
    """Base class for all errors raised by foldribbon."""


class DomainError(RibbonError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConstraintError(RibbonError, ValueError):
    """A construction constraint (escape-accordion clearance) is violated."""


class NumericalError(RibbonError, ArithmeticError):
    """A numerical routine failed to bracket or converge."""


class UnsupportedInputError(RibbonError, TypeError):
    """The input lacks information an operation needs (e.g. fold roles)."""


class DocumentParseError(RibbonError, ValueError):
    """A serialized diagram document could not be parsed."""


class SchemaVersionError(RibbonError, ValueError):
    """A serialized document carries an unknown schema_version."""
