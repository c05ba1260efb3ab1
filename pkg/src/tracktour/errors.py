"""Exception hierarchy shared by all tracktour modules."""


class TrackTourError(ValueError):
    pass


class InvalidRule(TrackTourError):
    pass


class InvalidBinaryString(TrackTourError):
    pass


class WindowTooLarge(TrackTourError):
    pass


class RangeTooLarge(TrackTourError):
    pass


class SizeTooLarge(TrackTourError):
    pass


class InvalidTournament(TrackTourError):
    pass


class InvalidBasicSize(TrackTourError):
    pass


class NotUnique(TrackTourError):
    """The tournament is not determined by its score vector."""


class NotDecomposable(TrackTourError):
    """The string is not an initial-loss non-tracking string."""


class InputTracks(TrackTourError):
    pass


class TooShort(TrackTourError):
    pass


class ParseError(TrackTourError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GapError(ParseError):
    pass


class NoOverlap(TrackTourError):
    pass


class NetworkError(TrackTourError):
    pass


class SnapshotMissing(NetworkError):
    """Offline mode found neither a cached copy nor a bundled snapshot."""
