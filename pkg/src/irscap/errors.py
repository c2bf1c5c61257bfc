"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto process exit codes: ConfigError -> 1,
DomainError (incl. GeometryError) -> 2, I/O failures -> 3.
"""


class IrscapError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(IrscapError):
    """A scenario file failed to parse or violated a field invariant."""


class DomainError(IrscapError):
    """An operation was called with inputs outside its numeric domain."""


class GeometryError(DomainError):
    """Degenerate geometry: coincident nodes where a link needs separation."""
