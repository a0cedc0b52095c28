"""Exception hierarchy shared by every module in the package."""


class CoarsenError(Exception):
    """Base class for all errors raised by this package."""


class OutOfRange(CoarsenError, ValueError):
    pass


class SelfLoop(CoarsenError, ValueError):
    pass


class DuplicateEdge(CoarsenError, ValueError):
    pass


class InvalidPartition(CoarsenError, ValueError):
    pass


class SizeLimit(CoarsenError, ValueError):
    pass


class MissingFeatures(CoarsenError, ValueError):
    pass


class MissingNodeLabels(CoarsenError, ValueError):
    pass


class MissingFile(CoarsenError, FileNotFoundError):
    pass


class MalformedLine(CoarsenError, ValueError):
    def __init__(self, path, lineno, detail=""):
        self.path = str(path)
        self.lineno = lineno
        msg = f"{self.path}:{lineno}: malformed line"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class IndicatorGap(CoarsenError, ValueError):
    pass


class EmptyEdgeSetWarning(UserWarning):
    """Line graph requested for a graph without edges."""
