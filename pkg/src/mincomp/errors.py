"""Exception hierarchy shared by every module."""


class MincompError(Exception):
    """Base class for all library errors."""


class SingularBasis(MincompError, ValueError):
    pass


class DimensionMismatch(MincompError, ValueError):
    pass


class GroupMismatch(MincompError, ValueError):
    pass


class EmptySet(MincompError, ValueError):
    pass


class NotAComplement(MincompError, ValueError):
    pass


class NotSymmetric(MincompError, ValueError):
    pass


class NotGenerating(MincompError, ValueError):
    pass


class NotDisjoint(MincompError, ValueError):
    pass


class NotMinimalInput(MincompError, ValueError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"part {index}: M is not a minimal complement of W")


class SearchTooLarge(MincompError):
    def __init__(self, order, cap):
        self.order = order
        self.cap = cap
        super().__init__(f"group order {order} exceeds the search cap {cap}")


class EmptyBase(MincompError, ValueError):
    pass


class NotCanonical(MincompError, ValueError):
    pass


class EmptyW1(MincompError, ValueError):
    pass


class InvalidCertificate(MincompError, ValueError):
    pass


class NegativeShells(MincompError, ValueError):
    pass


class MalformedBeam(MincompError, ValueError):
    pass


class ShellCapExceeded(MincompError):
    def __init__(self, point, cap):
        self.point = point
        self.cap = cap
        super().__init__(f"no covering point found for {point} within {cap} extra shells")


class MinimalityWitnessMissing(MincompError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"kept point {point} has no minimality witness")


class CoverageFailure(MincompError):
    def __init__(self, points):
        self.points = list(points)
        super().__init__(f"{len(self.points)} uncovered point(s), first {self.points[0]}")


class BadParams(MincompError, ValueError):
    pass


class FormViolation(MincompError, ValueError):
    pass


class EPSetParseError(MincompError, ValueError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
