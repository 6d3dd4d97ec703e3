"""Exception hierarchy shared by every module."""


class Fo2HierError(Exception):
    """Base class for all library errors."""


class ParseError(Fo2HierError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EmptyAlphabet(Fo2HierError, ValueError):
    pass


class IndexOutOfRange(Fo2HierError, ValueError):
    pass


class NonAssociative(Fo2HierError, ValueError):
    def __init__(self, a, b, c):
        super().__init__(f"(ab)c != a(bc) for a={a}, b={b}, c={c}")
        self.witness = (a, b, c)


class BadIdentity(Fo2HierError, ValueError):
    def __init__(self, a):
        super().__init__(f"identity law fails at element {a}")
        self.witness = a


class UnknownLetter(Fo2HierError, KeyError):
    def __init__(self, letter):
        super().__init__(f"letter {letter!r} is not in the alphabet")
        self.letter = letter


class UnboundVariable(Fo2HierError, KeyError):
    def __init__(self, index):
        super().__init__(f"variable x{index} has no value")
        self.index = index


class BudgetExceeded(Fo2HierError, RuntimeError):
    """A configured size or work budget would be exceeded.

    ``partial`` carries whatever progress count was reached.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InconsistentArrow(Fo2HierError, ValueError):
    pass


class IllDefinedProduct(Fo2HierError, AssertionError):
    pass
