"""Exception hierarchy shared by all pcmtree modules."""


class PCMError(ValueError):
    """Base class for every domain error raised by pcmtree."""


class ParseError(PCMError):
    pass


class InvalidMatrix(PCMError):
    """Raised when a matrix violates reciprocity, positivity or the unit diagonal."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = [f"({i + 1},{j + 1}): {msg}" for i, j, msg in self.violations]
        super().__init__("invalid pairwise comparison matrix; " + "; ".join(lines))


class IncompleteMatrix(PCMError):
    pass


class TooSmall(PCMError):
    pass


class DisconnectedGraph(PCMError):
    pass


class TreeCountExceedsCap(PCMError):
    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(
            f"graph has {count} spanning trees, above the enumeration cap of {cap} "
            "(raise it with PCM_TREE_CAP)"
        )


class EdgeNotInMatrix(PCMError):
    pass


class NonConvergence(PCMError):
    pass


class LengthMismatch(PCMError):
    pass


class DegenerateSample(PCMError):
    pass
