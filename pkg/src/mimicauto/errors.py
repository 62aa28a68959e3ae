"""Exception hierarchy shared across the package."""


class MimicError(Exception):
    """Base class for every error raised by mimicauto."""


class ConfigurationMismatch(MimicError):
    pass


class UndeclaredSymbol(MimicError):
    pass


class NotHalted(MimicError):
    pass


class NotOneHot(MimicError):
    pass


class TableExhausted(MimicError):
    pass


class HandoffOnReject(MimicError):
    pass


class NotRegularCase(MimicError):
    pass


class EnumerationTooLarge(MimicError):
    pass


class BuildError(MimicError):
    """Structural problem found while assembling a mimic automaton.

    ``violations`` holds every problem found, not only the first one.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(v.message for v in self.violations))


class MissingBinding(BuildError):
    pass


class AlphabetMismatch(BuildError):
    pass


class GlueIncompatible(BuildError):
    pass


class DepthUnsupported(BuildError):
    pass
