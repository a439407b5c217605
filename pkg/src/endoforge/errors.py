"""Exception hierarchy.

Construction preconditions raise subclasses of PreconditionFailed, malformed
user input raises MalformedInput, and violations of guaranteed invariants
(things that should be impossible on valid inputs) raise InvariantViolated.
"""


class EndoforgeError(Exception):
    pass


class MalformedInput(EndoforgeError):
    """Input file or raw table does not parse into the expected shape."""


class MalformedTable(MalformedInput):
    pass


class PreconditionFailed(EndoforgeError):
    """A documented hypothesis of an operation does not hold for the input."""


class InvariantViolated(EndoforgeError):
    """A guaranteed property failed; indicates a bug, never expected."""


# algebra

class NotAssociative(PreconditionFailed):
    def __init__(self, x, y, z):
        self.triple = (x, y, z)
        super().__init__(f"not associative at ({x}*{y})*{z} != {x}*({y}*{z})")


class BadIdentity(PreconditionFailed):
    def __init__(self, x):
        self.witness = x
        super().__init__(f"identity law fails at element {x}")


class NotCommutativeIdempotent(PreconditionFailed):
    pass


class NoJoin(PreconditionFailed):
    def __init__(self, x, y):
        self.pair = (x, y)
        super().__init__(f"elements {x}, {y} have no least upper bound")


class NoMeet(PreconditionFailed):
    def __init__(self, x, y):
        self.pair = (x, y)
        super().__init__(f"elements {x}, {y} have no greatest lower bound")


class NotPoset(PreconditionFailed):
    pass


class SizeOverflow(PreconditionFailed):
    pass


class NotPrime(PreconditionFailed):
    pass


# graph constructions

class NotGenerating(PreconditionFailed):
    pass


class TooManyGenerators(PreconditionFailed):
    pass


class NoColors(PreconditionFailed):
    pass


class HasLoops(PreconditionFailed):
    pass


class MinDegreeViolation(PreconditionFailed):
    pass


class KTooSmall(PreconditionFailed):
    pass


class NotEndomorphism(PreconditionFailed):
    pass


class NotAWalk(PreconditionFailed):
    pass


class BadChain(PreconditionFailed):
    pass


# enumeration and analysis

class BudgetExceeded(EndoforgeError):
    """Search exceeded its node budget; partial results are never returned."""


class NotClosed(PreconditionFailed):
    pass


class NotIdempotentCommutative(PreconditionFailed):
    pass


class NotPrincipal(InvariantViolated):
    pass
