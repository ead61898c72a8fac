"""Errors raised by pcomplex.

Every error carries the module it came from so the CLI can report provenance,
and an exit code.  Invalid input and exceeded caps use distinct codes.

Naming conventions are enforced for certain data types in the yml configs.

Enforced Conventions
DataType:
    List: attributes must be named in a plural way
"""

EXIT_INVALID_INPUT = 2
EXIT_CAP_EXCEEDED = 3
EXIT_INVARIANT_VIOLATION = 4


class NamingConventionException(Exception):
    """Raise when a value does not meet naming convention standards."""

    ...


class PComplexError(Exception):
    """Base error; `module` names where it was raised."""

    exit_code = 1

    def __init__(self, message: str, module: str = None):
        super().__init__(message)
        self.message = message
        self.module = module

    def __str__(self) -> str:
        if self.module:
            return f"[{self.module}] {self.message}"
        return self.message


class InvalidInputError(PComplexError):
    exit_code = EXIT_INVALID_INPUT


class GroupSpecSyntaxError(InvalidInputError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(
            f"{message} at position {position}: {text!r}", module="groupspec"
        )
        self.text = text
        self.position = position


class UnknownDataNameError(InvalidInputError):
    ...


class GeneratorFileError(InvalidInputError):
    ...


class DegreeMismatchError(InvalidInputError):
    ...


class NotAPrimeError(InvalidInputError):
    ...


class PrimeDoesNotDivideOrderError(InvalidInputError):
    ...


class NotAPGroupError(InvalidInputError):
    ...


class CapExceededError(PComplexError):
    """Raise when a configured enumeration cap is hit.

    The message names the cap, its limit and both ways of raising it.
    """

    exit_code = EXIT_CAP_EXCEEDED

    def __init__(self, cap_name: str, limit: int, needed=None, module: str = None):
        # local import keeps settings free of the exception module
        from pcomplex.settings import CAP_SOURCES

        self.cap_name = cap_name
        self.limit = limit
        self.config_key, self.flag = CAP_SOURCES.get(cap_name, (cap_name, None))
        needed_str = f" (needed {needed})" if needed is not None else ""
        message = (
            f"cap '{cap_name}' exceeded: limit {limit}{needed_str}; "
            f"raise it with config key '{self.config_key}'"
        )
        if self.flag:
            message += f" or flag {self.flag}"
        super().__init__(message, module=module)


class InvariantViolationError(PComplexError):
    exit_code = EXIT_INVARIANT_VIOLATION
