"""Exception types shared across the toolkit."""


class OutOfRangeError(ValueError):
    """A coordinate exceeds the supported range (|x|, |y| <= 2**30)."""


class InvalidDrawingError(ValueError):
    """An operation that requires a valid drawing received an invalid one.

    Carries the full validation report in ``report``.
    """

    def __init__(self, report):
        self.report = report
        lines = "; ".join(str(v) for v in report.violations[:5])
        extra = len(report.violations) - 5
        if extra > 0:
            lines += f"; ... ({extra} more)"
        super().__init__(f"invalid drawing: {lines}")


class SearchCapError(ValueError):
    """A search was requested beyond its supported size cap."""


class LemmaViolationError(AssertionError):
    """A certified inequality or planarity claim failed.

    On drawings that satisfy the certification hypothesis this signals an
    implementation bug, never a property of the input.
    """


class FourColorSearchError(RuntimeError):
    """The exhaustive 4-coloring search failed: the input was not planar."""


class AssignmentImpossibleError(RuntimeError):
    """A crossed edge could not be anchored to a face corner.

    Only reachable if a tangent direction ties with a skeleton edge
    direction, which validation already excludes.
    """


class ParseError(ValueError):
    """A drawing file does not conform to the ``pccdrawing 1`` grammar."""

    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")
