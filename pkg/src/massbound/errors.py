"""Exception types shared across the package."""


class MassboundError(Exception):
    """Base class for all package errors."""


class OutOfRange(MassboundError):
    pass


class NotSquarefree(MassboundError):
    def __init__(self, d: int):
        super().__init__(f"{d} has a square factor")
        self.d = d


class DyadicMismatch(MassboundError):
    pass


class ParityError(MassboundError):
    pass


class DomainError(MassboundError):
    pass


class ResidueRequired(MassboundError):
    """Raised where a rank-2 mass would need zeta residues; only bounds exist."""


class UnsupportedField(MassboundError):
    pass


class NotRealizable(MassboundError):
    """The sequence is not the Euler transform of any nonnegative integer sequence."""


class ParityInternal(MassboundError):
    """Internal consistency failure in the biquadratic L-factorisation."""


class DenominatorNonpositive(MassboundError):
    pass
