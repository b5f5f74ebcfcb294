"""Exception hierarchy.

``Unsupported`` subclasses mark computations the engine refuses rather than
gets wrong (degenerate substitutions, nonlocal results, integrals it cannot
take); the CLI maps them to exit code 3.
"""


class HamopError(Exception):
    pass


class ContextError(HamopError, ValueError):
    """Operands live on different jet spaces."""


class IndexBoundError(HamopError, ValueError):
    pass


class ParseError(HamopError, ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class Unsupported(HamopError):
    pass


class DegenerateSubstitution(Unsupported, ValueError):
    pass


class NonlocalResult(Unsupported):
    pass


class NotADivergence(Unsupported, ValueError):
    pass


class UnsupportedIntegration(Unsupported):
    pass
