"""Exception hierarchy shared by every harm module."""

from __future__ import annotations


class HarmError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(HarmError, ValueError):
    """A caller broke an operation's precondition (bad index, invalid model...)."""


class ModelValidationError(UsageError):
    """The model violates one or more invariants.

    ``violations`` holds every problem found, not just the first.
    """

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid model: {lines}")


class UnreachableTargetError(HarmError):
    """The metric is undefined because no attack path reaches the target."""

    def __init__(self, message: str = "target unreachable"):
        super().__init__(message)


class PathCapExceededError(HarmError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"path enumeration exceeded the cap of {cap} paths")


class DegenerateResistanceError(HarmError):
    """Parallel composition met a predecessor with zero cumulative resistance."""


class DomainError(HarmError, ValueError):
    """A numeric input is outside the domain of a formula (e.g. zero cost)."""


# ingest categories


class SpecError(HarmError):
    """Base class for network-description document errors."""


class SpecSyntaxError(SpecError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"syntax error at line {line}, column {column}: {message}")


class SpecFormatError(SpecError):
    """Well-formed JSON that does not follow the document schema."""


class UnknownSchemaVersionError(SpecError):
    pass


class DuplicateHostError(SpecError):
    def __init__(self, host_id: str):
        self.host_id = host_id
        super().__init__(f"duplicate host id {host_id}")


class DanglingEdgeError(SpecError):
    def __init__(self, src: str, dst: str, missing: str):
        self.edge = (src, dst)
        self.missing = missing
        super().__init__(f"edge ({src}, {dst}) references unknown node {missing}")


class MissingFieldError(SpecError):
    def __init__(self, field: str, where: str = "document"):
        self.field = field
        super().__init__(f"missing {field}" + ("" if where == "document" else f" in {where}"))
