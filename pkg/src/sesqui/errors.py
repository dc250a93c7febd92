"""Exception hierarchy shared by every module of the package."""


class SesquiError(Exception):
    """Base class for all errors raised by sesqui."""


class NotComposable(SesquiError):
    pass


class NoPullback(SesquiError):
    pass


class ConeMismatch(SesquiError):
    pass


class UnsupportedBackend(SesquiError):
    pass


class MissingEntry(SesquiError):
    """A finite table has no entry where the axioms require one."""


class NotVerticallyComposable(SesquiError):
    """``maps`` holds the two morphisms ``(dom v, cod u)`` that failed to match."""

    def __init__(self, message: str, maps: tuple = ()):
        super().__init__(message)
        self.maps = maps


class NotWhiskerable(SesquiError):
    pass


class NotInvertible(SesquiError):
    pass


class ShapeMismatch(SesquiError):
    pass


class NotComposableCells(SesquiError):
    pass


class NotNaturalPair(SesquiError):
    pass


class ActionAxiomViolation(SesquiError):
    pass


class NotCartesianHere(SesquiError):
    pass


class TypeMismatch(SesquiError):
    pass


class MissingPullback(SesquiError):
    pass


class DeltaNotCentral(SesquiError):
    pass


class DeltaNotInKernel(SesquiError):
    pass


class SideConditionViolation(SesquiError):
    pass


class QuotientIllTyped(SesquiError):
    pass


class UnknownObject(SesquiError):
    pass


class ParseError(SesquiError):
    """Raised with one or more :class:`sesqui.specio.Diagnostic` entries."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class ResolveError(ParseError):
    pass
