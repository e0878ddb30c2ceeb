"""Exception hierarchy. Every error carries a stable ``code`` string used by the CLI."""


class PbpoError(Exception):
    code = "PbpoError"


class UnknownLabel(PbpoError, KeyError):
    code = "UnknownLabel"

    def __str__(self):
        return Exception.__str__(self)


class ReservedLabelCollision(PbpoError, ValueError):
    code = "ReservedLabelCollision"


class InvalidSize(PbpoError, ValueError):
    code = "InvalidSize"


class NotALattice(PbpoError, ValueError):
    code = "NotALattice"


class InvalidGraph(PbpoError, ValueError):
    code = "InvalidGraph"


class InvalidMorphism(PbpoError, ValueError):
    code = "InvalidMorphism"


class ComposabilityMismatch(PbpoError, ValueError):
    code = "ComposabilityMismatch"


class LatticeMismatch(PbpoError, ValueError):
    code = "LatticeMismatch"


class NonCommutingSquare(PbpoError, ValueError):
    code = "NonCommutingSquare"


class NonCommuting(NonCommutingSquare):
    code = "NonCommuting"


class NotACone(PbpoError, ValueError):
    code = "NotACone"


class NoMediator(PbpoError, ValueError):
    code = "NoMediator"


class NonHeytingLattice(PbpoError, ValueError):
    code = "NonHeytingLattice"


class NotRegularMono(PbpoError, ValueError):
    code = "NotRegularMono"


class NotAPullback(PbpoError, ValueError):
    code = "NotAPullback"


class NotAStrongMatch(PbpoError, ValueError):
    code = "NotAStrongMatch"


class NotAMatch(PbpoError, ValueError):
    code = "NotAMatch"


class NotCanonical(PbpoError, ValueError):
    code = "NotCanonical"


class NoSuchMatch(PbpoError, LookupError):
    code = "NoSuchMatch"


class CertificateFailure(PbpoError, AssertionError):
    """A square that must hold by construction failed its check. Indicates a bug."""

    code = "CertificateFailure"


class PullbackCertificateFailed(CertificateFailure):
    code = "PullbackCertificateFailed"


class EnumerationLimitExceeded(PbpoError, RuntimeError):
    code = "EnumerationLimitExceeded"


class FormatError(PbpoError, ValueError):
    code = "FormatError"
