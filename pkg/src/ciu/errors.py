"""Exception hierarchy shared by every layer of the package."""


class CIUError(Exception):
    """Base class for all errors raised by ciu."""


class RingMismatch(CIUError):
    pass


class ZeroPolynomialError(CIUError):
    pass


class ResourceLimitExceeded(CIUError):
    """A Groebner computation hit its configured pair or basis-size cap."""

    def __init__(self, what, limit):
        super().__init__(f"{what} exceeded configured cap of {limit}")
        self.what = what
        self.limit = limit


class UnitIdealError(CIUError):
    """Raised where a proper ideal was required but (1) was found."""


class ArtinianReductionError(CIUError):
    pass


class PfaffianError(CIUError):
    pass


class HypothesisError(CIUError):
    """Input data does not satisfy the hypotheses a construction needs."""


class TheoremContradiction(CIUError):
    """A computed result contradicts a theorem; always a hard failure."""


class PresentationError(CIUError):
    """The alternating presentation search gave up."""


class LinkageError(CIUError):
    """The linked ideal failed a structural check (generator parity, double link)."""


class GateError(HypothesisError):
    """A validity gate of the inverse construction failed; ``gate`` names it."""

    def __init__(self, gate, message):
        super().__init__(f"{gate}: {message}")
        self.gate = gate
