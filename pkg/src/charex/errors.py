"""Exception types raised across the package.

Every error derives from :class:`CharexError`.  Input-validation problems
also derive from :class:`ValidationError` (CLI exit code 2); contradictions
discovered by the moment recursion derive from :class:`InconsistencyError`
(CLI exit code 3).
"""


class CharexError(Exception):
    pass


class ValidationError(CharexError, ValueError):
    pass


class InconsistencyError(CharexError):
    pass


class DegreeLimitExceeded(ValidationError):
    pass


class DuplicateMu(ValidationError):
    pass


class ZeroMu(ValidationError):
    pass


class NonPositiveMu(ValidationError):
    pass


class TooFewMu(ValidationError):
    pass


class FamilyMismatch(ValidationError):
    pass


class OddDegree(ValidationError):
    pass


class InsufficientMoments(ValidationError):
    pass


class InsufficientSeeds(ValidationError):
    pass


class RankOutOfRange(ValidationError):
    pass


class MissingSeed(InconsistencyError):
    """A singular recursion step is consistent but its moment is not fixed."""

    def __init__(self, m: int):
        super().__init__(f"MissingSeed({m}): singular step needs a seeded moment")
        self.m = m


class Inconsistent(InconsistencyError):
    """A singular recursion step has a non-zero right-hand side."""

    def __init__(self, m: int, rhs=None):
        super().__init__(f"Inconsistent({m}): zero denominator with non-zero rhs {rhs}")
        self.m = m
        self.rhs = rhs
