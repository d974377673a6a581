"""
Error types for the greedy defining set toolkit
Every library error carries the exit code the CLI reports for it
"""

from typing import Optional


class GDSError(Exception):
    """Base class for all toolkit errors"""
    exit_code = 1


class InputError(GDSError):
    """Malformed or inconsistent input (unknown vertex, improper coloring, non-cover, ...)"""
    exit_code = 2


class ParseError(InputError):
    """A file does not follow its declared text format"""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        location = ""
        if path:
            location = f"{path}:{line}: " if line else f"{path}: "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line


class InfeasibleError(InputError):
    """A set family contains an empty member, so no hitting set exists"""


class CapabilityError(GDSError):
    """An exact solver was asked to go beyond its configured size guard"""
    exit_code = 3

    def __init__(self, guard: str, limit: int, value: int):
        super().__init__(f"{guard}: size {value} exceeds the limit of {limit}")
        self.guard = guard
        self.limit = limit
        self.value = value


class InternalInvariantError(GDSError):
    """An internal consistency check failed (indicates a bug, not bad input)"""


class AuditError(GDSError):
    """An authorized set could not reconstruct the shared key"""

    def __init__(self, set_id: str, detail: str = ""):
        message = f"authorized set '{set_id}' failed to reconstruct the key"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.set_id = set_id
