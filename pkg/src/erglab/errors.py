"""Exception hierarchy shared by every erglab module."""


class ErgLabError(Exception):
    """Base class for all library errors."""


class NonPositiveWeight(ErgLabError):
    def __init__(self, value):
        super().__init__(f"weight must be positive, got {value}")
        self.value = value


class WeightsDontSumToOne(ErgLabError):
    def __init__(self, total):
        super().__init__(f"weights sum to {total}, expected 1")
        self.total = total


class SpaceMismatch(ErgLabError):
    pass


class NegativeObservable(ErgLabError):
    pass


class ObservableOutOfRange(ErgLabError):
    pass


class NotBijective(ErgLabError):
    pass


class NotMeasurePreserving(ErgLabError):
    def __init__(self, point):
        super().__init__(f"weight not preserved at point {point!r}")
        self.point = point


class DoesNotCommute(ErgLabError):
    def __init__(self, point):
        super().__init__(f"t1 and t2 do not commute at point {point!r}")
        self.point = point


class NotAFactorMap(ErgLabError):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class NotErgodic(ErgLabError):
    pass


class SizeLimitExceeded(ErgLabError):
    def __init__(self, size, limit):
        super().__init__(f"system has {size} points, limit is {limit}")
        self.size = size
        self.limit = limit


class EmptySet(ErgLabError):
    pass


class NonPositiveEpsilon(ErgLabError):
    pass


class ZeroShift(ErgLabError):
    pass


class OutOfRange(ErgLabError):
    pass


class ParseError(ErgLabError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class UnknownSuite(ErgLabError):
    pass
