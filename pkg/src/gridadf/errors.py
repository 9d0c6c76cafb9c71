"""Exception hierarchy.

Every error raised by the package derives from :class:`GridAdfError`, so a
batch driver can catch one type and record the failure.
"""


class GridAdfError(Exception):
    """Base class for all package errors."""


# series
class EmptySeries(GridAdfError):
    pass


class NonFinite(GridAdfError):
    pass


class FinerTarget(GridAdfError):
    pass


class BadLength(GridAdfError):
    pass


# rolling / transforms
class WindowTooLarge(GridAdfError):
    pass


class WindowTooSmall(GridAdfError):
    pass


class BadAlpha(GridAdfError):
    pass


class NonpositiveValue(GridAdfError):
    pass


class TooShort(GridAdfError):
    pass


# regression / tests
class ShapeMismatch(GridAdfError):
    pass


class RankDeficient(GridAdfError):
    def __init__(self, rank, ncols):
        super().__init__(f"design has numerical rank {rank} < {ncols} columns")
        self.rank = rank
        self.ncols = ncols


class DegenerateSeries(GridAdfError):
    pass


class ZeroRSS(GridAdfError):
    pass


class TooFewObs(GridAdfError):
    pass


# data
class ParseError(GridAdfError):
    def __init__(self, line, column, reason):
        super().__init__(f"line {line}, column {column!r}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class GapError(GridAdfError):
    def __init__(self, zone, missing):
        super().__init__(f"zone {zone!r}: first missing hour {missing}")
        self.zone = zone
        self.missing = missing


class DuplicateTimestamp(GridAdfError):
    def __init__(self, zone, timestamp):
        super().__init__(f"zone {zone!r}: duplicate timestamp {timestamp}")
        self.zone = zone
        self.timestamp = timestamp


class UnknownZone(GridAdfError):
    pass


class EmptyDataset(GridAdfError):
    pass
