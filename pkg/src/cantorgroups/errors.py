"""Exception hierarchy shared by every layer of the engine."""


class CantorGroupsError(Exception):
    pass


class PartitionError(CantorGroupsError, ValueError):
    pass


class OverlapError(PartitionError):
    """Two blocks of a would-be partition intersect."""


class GapError(PartitionError):
    """The blocks do not cover the whole space."""


class AlphabetError(CantorGroupsError, ValueError):
    pass


class WordTooLong(CantorGroupsError, ValueError):
    pass


class NotAGroupError(CantorGroupsError, ValueError):
    pass


class SizeMismatch(CantorGroupsError, ValueError):
    pass


class ActionMismatch(CantorGroupsError, ValueError):
    pass


class ContainmentError(CantorGroupsError, ValueError):
    pass


class NotFull(CantorGroupsError, ValueError):
    pass


class EmptyTarget(CantorGroupsError, ValueError):
    pass


class ShiftZeroIdentity(CantorGroupsError, ValueError):
    pass


class UnknownSuite(CantorGroupsError, KeyError):
    pass


class ParseError(CantorGroupsError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
