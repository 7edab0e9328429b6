"""Exception hierarchy.

Every error raised deliberately by the package derives from :class:`MopedError`,
which is itself a ``ValueError`` so callers that only care about bad input can
catch that.  :class:`DataError` marks problems with the data (as opposed to a
bad configuration); the command line maps it to exit code 3.
"""


class MopedError(ValueError):
    pass


class DataError(MopedError):
    pass


class InvalidData(DataError):
    pass


class TooShort(DataError):
    pass


class SeriesTooShort(TooShort):
    pass


class SegmentTooShort(TooShort):
    pass


class EmptyWindow(DataError):
    pass


class RankTooLarge(MopedError):
    pass


class NotPositiveDefinite(MopedError):
    pass


class InvalidSpec(MopedError):
    pass


class LengthMismatch(MopedError):
    pass


class EmptyResults(MopedError):
    pass


class MalformedCsv(DataError):
    pass


class ParseError(DataError):
    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class EmptyData(DataError):
    pass
