"""Exception hierarchy shared by every module.

Each class carries the process exit code the command line uses when the
error escapes a command: 1 for parse/spec problems, 2 for invalid input
to an operation, 3 for an exhausted resource budget.
"""


class OreError(Exception):
    exit_code = 2


# -- parse / spec errors (exit 1) -------------------------------------------

class ParseError(OreError):
    exit_code = 1

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownSymbol(ParseError):
    def __init__(self, name, position=None):
        self.name = name
        super().__init__(f"unknown symbol {name!r}", position)


class DuplicateName(OreError):
    exit_code = 1

    def __init__(self, name):
        self.name = name
        super().__init__(f"duplicate name {name!r}")


class ClosureError(OreError):
    exit_code = 1

    def __init__(self, generator, derivation):
        self.generator = generator
        self.derivation = derivation
        super().__init__(
            f"derivation table has no entry for {derivation}({generator})")


# -- invalid input (exit 2) -------------------------------------------------

class DivisionByZero(OreError, ZeroDivisionError):
    pass


class SpecMismatch(OreError):
    pass


class ZeroOperator(OreError):
    pass


class WrongArity(OreError):
    pass


class InvalidChain(OreError):
    pass


class MismatchedTop(OreError):
    pass


class EmptyFactorList(OreError):
    pass


class WrongKind(OreError):
    """A session value of one kind (operator, ideal, chain...) used as another."""


# -- budget (exit 3) --------------------------------------------------------

class ResourceExceeded(OreError):
    exit_code = 3
