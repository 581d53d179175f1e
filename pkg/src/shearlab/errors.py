"""Exception and warning types shared across shearlab."""


class ShearlabError(Exception):
    pass


class NonDifferentiableProfile(ShearlabError, ValueError):
    """A profile derivative was requested where the profile has none."""


class InvalidParameters(ShearlabError, ValueError):
    pass


class InvalidBackground(InvalidParameters):
    pass


class ZeroMode(InvalidParameters):
    pass


class ExpansionOrderTooHigh(ShearlabError, ValueError):
    pass


class TooCloseToSheet(ShearlabError, ValueError):
    pass


class ConfigInvalid(ShearlabError, ValueError):
    pass


class ExperimentFailed(ShearlabError):
    def __init__(self, criterion, message=""):
        self.criterion = criterion
        super().__init__(f"{criterion}: {message}" if message else criterion)


class QuadratureUnderResolved(UserWarning):
    pass


class DegenerateData(UserWarning):
    pass
