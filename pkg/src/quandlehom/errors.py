"""Exception types shared across the package."""


class QuandleHomError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModulusError(QuandleHomError):
    """A modulus is out of range (< 2) or a required prime is not prime."""


class ElementMismatchError(QuandleHomError):
    """A group element does not belong to the group it was used with."""


class NotOddOrderError(QuandleHomError):
    """An operation requiring odd group order was given an even modulus."""


class NotAGroupError(QuandleHomError):
    """A multiplication table fails the group axioms.

    ``witness`` holds the offending indices (e.g. a triple for
    associativity) when one exists.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAQuandleError(QuandleHomError):
    """A candidate table fails the quandle axioms; carries the report."""

    def __init__(self, report):
        super().__init__(f"not a quandle: {report.describe()}")
        self.report = report


class NotAQuasigroupError(QuandleHomError):
    """A quasigroup-only operation was applied to a non-quasigroup quandle."""


class ResourceLimitError(QuandleHomError):
    """A configured size or time budget was exceeded."""


class GaussCodeError(QuandleHomError):
    """A signed Gauss code failed to parse; ``position`` locates the fault.

    ``position`` is ``(component_index, token_index)`` or None when the
    problem is global (e.g. a crossing id appearing only once).
    """

    def __init__(self, message, position=None):
        where = "" if position is None else f" (component {position[0]}, token {position[1]})"
        super().__init__(message + where)
        self.position = position


class SpecParseError(QuandleHomError):
    """A textual spec string (group, quandle, cocycle) was not understood."""
