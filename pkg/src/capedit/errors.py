"""Exception hierarchy shared across the package."""


class CapeditError(Exception):
    """Base class for all package-specific errors."""


class CommandError(CapeditError):
    """Invalid command triplet or command/reference combination."""


class ControlFormatError(CapeditError):
    """Malformed control sequence passed to the parser."""


class OracleError(CapeditError):
    """The rule-based editor cannot realize the requested command."""


class DatasetError(CapeditError):
    """Malformed input file; message names the file and line."""
