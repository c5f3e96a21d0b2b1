"""Exception hierarchy.

Every error raised by the library derives from :class:`VdgvError`.  The four
intermediate classes map onto the CLI exit codes: bad input (2), violated
standing assumptions about the curve (3), failed internal cross-checks (4) and
refused enumerations (5).
"""


class VdgvError(Exception):
    exit_code = 1


class InputError(VdgvError, ValueError):
    exit_code = 2


class AssumptionError(VdgvError):
    exit_code = 3


class ConsistencyError(VdgvError, AssertionError):
    """An identity that must hold on a correct build did not."""

    exit_code = 4


class SizeGuardExceeded(VdgvError):
    exit_code = 5


# gf
class NotPrime(InputError):
    pass


class NotASubfield(InputError):
    pass


class EvenCharacteristic(InputError):
    pass


# cyclo
class UnsupportedOrder(InputError):
    pass


class NotRationalInteger(ConsistencyError):
    pass


class NormMismatch(InputError):
    pass


class NonIntegralCoefficient(ConsistencyError):
    pass


# addpoly
class NoSuchFactor(InputError):
    pass


class NotReduced(InputError):
    pass


class RootsNotInFp(InputError):
    pass


# heis
class NotInGroup(InputError):
    pass


class PointNotOnCurve(InputError):
    pass


class NotInVR(InputError):
    pass


class ValueNotInFp(ConsistencyError):
    pass


class NoRationalMaximalIsotropic(AssumptionError):
    pass


class NoRationalLift(AssumptionError):
    pass


class CentralCharacterTrivial(InputError):
    pass


# quotient
class ZeroElement(InputError):
    pass


class NoSolution(ConsistencyError):
    pass


class DependentImage(ConsistencyError):
    pass


class NotCommuting(InputError):
    pass


# gauss
class NoRoot(ConsistencyError):
    pass


class NotACharacter(ConsistencyError):
    pass


class HypothesisViolated(AssumptionError):
    pass


class NonIntegral(ConsistencyError):
    pass


# lfunc
class OracleMismatch(ConsistencyError):
    pass
