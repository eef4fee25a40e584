"""Exception hierarchy shared by every entwit module."""


class EntwitError(Exception):
    """Base class for all errors raised by entwit."""


class NotHermitian(EntwitError, ValueError):
    pass


class DimensionMismatch(EntwitError, ValueError):
    pass


class NotAState(EntwitError, ValueError):
    """A matrix failed density-matrix validation.

    ``violations`` names every invariant that failed, e.g. ``["unit_trace"]``.
    """

    def __init__(self, violations, detail=""):
        self.violations = list(violations)
        msg = "not a density matrix: " + ", ".join(self.violations)
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class BadParameter(EntwitError, ValueError):
    """One or more family parameters are out of range.

    ``problems`` lists every violated constraint, not only the first.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class BadNormalization(BadParameter):
    pass


class RealignmentNotHermitian(EntwitError, ValueError):
    pass


class EmptyGrid(EntwitError, ValueError):
    pass


class UnknownFamily(EntwitError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown family"


class BadRange(EntwitError, ValueError):
    pass


class ParseError(EntwitError, ValueError):
    pass
