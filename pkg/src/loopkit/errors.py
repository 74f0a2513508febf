"""Exception hierarchy shared by all loopkit modules."""


class LoopError(Exception):
    """Base class for every error raised by loopkit."""


class TableError(LoopError, ValueError):
    """A Cayley table failed validation."""


class NotSquare(TableError):
    pass


class EntryOutOfRange(TableError):
    pass


class NotLatin(TableError):
    """A row or column repeats an entry.

    ``where`` is ``("row", i)`` or ``("column", j)`` and ``witness`` is the
    repeated value (0-based).
    """

    def __init__(self, where, witness):
        self.where = where
        self.witness = witness
        super().__init__(f"not a Latin square: {where[0]} {where[1]} repeats {witness}")


class IdentityNotFirst(TableError):
    pass


class NotASubloop(LoopError, ValueError):
    pass


class NotNormal(LoopError, ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"subloop is not normal (witness {witness})")


class PreconditionViolated(LoopError, ValueError):
    """An operation was called on a loop outside its hypotheses."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"precondition violated: {reason}")


class DegreeMismatch(LoopError, ValueError):
    pass


class InternalInconsistency(LoopError, AssertionError):
    """Two routes that must agree did not. Always a bug in loopkit."""


class IsoVerificationFailed(InternalInconsistency):
    pass
