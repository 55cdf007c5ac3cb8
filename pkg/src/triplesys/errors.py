"""Exception hierarchy shared by every module of the package."""


class TriplesysError(Exception):
    """Base class for all errors raised by triplesys."""


# algebra
class NonPrimePowerFactor(TriplesysError, ValueError):
    pass


class NotHomomorphism(TriplesysError, ValueError):
    pass


class NotBijective(TriplesysError, ValueError):
    pass


class BoundExceeded(TriplesysError, ValueError):
    pass


# moufang
class NotCML(TriplesysError, ValueError):
    pass


class NotNuclear(TriplesysError, ValueError):
    pass


class IminusKNotBijective(TriplesysError, ValueError):
    pass


# quasigroup / designs
class NotLatinSquare(TriplesysError, ValueError):
    pass


class NotMendelsohn(TriplesysError, ValueError):
    """The table is not an idempotent semisymmetric quasigroup."""


NotMendelsohnQuasigroup = NotMendelsohn


class SearchBudgetExceeded(TriplesysError, RuntimeError):
    """A backtracking search hit its node cap; the answer is indeterminate."""


class PairCovered(TriplesysError, ValueError):
    """A pair of points is covered by no block or by more than one block."""


class BadOrder(TriplesysError, ValueError):
    pass


class ParseError(TriplesysError, ValueError):
    pass


# constructions
class ConditionMViolated(TriplesysError, ValueError):
    pass


class NotAutomorphism(TriplesysError, ValueError):
    pass


class OrderNotOneModSix(TriplesysError, ValueError):
    pass


class NotInSpectrum(TriplesysError, ValueError):
    pass


class OrderNotSevenModTwelve(TriplesysError, ValueError):
    pass


class ConsistencyFailure(TriplesysError, RuntimeError):
    """An internal arithmetic identity failed; indicates a bug, not bad input."""


class InvalidSTS(TriplesysError, ValueError):
    pass
