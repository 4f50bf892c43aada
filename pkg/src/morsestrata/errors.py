"""Exception hierarchy shared by all modules."""


class MorseStrataError(Exception):
    pass


class InvalidProgram(MorseStrataError, ValueError):
    """Raised when an operation needs a valid program and got one that is not."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid program")


class NonOrientableOrInvalid(MorseStrataError):
    pass


class GenusNegative(MorseStrataError):
    pass


class NotARefinement(MorseStrataError, ValueError):
    pass


class BudgetExceeded(MorseStrataError):
    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"enumeration node budget of {budget} exceeded")


class RankMismatch(MorseStrataError):
    pass


class NonUnimodular(MorseStrataError):
    pass


class IncompleteInput(MorseStrataError):
    pass


class ValueOutOfRange(MorseStrataError, ValueError):
    pass


class NotInStar(MorseStrataError, ValueError):
    pass


class NonPositivePeriod(MorseStrataError, ValueError):
    pass


class InconsistentPeriods(MorseStrataError, ValueError):
    """Edge periods violate a linear relation among the arc classes of the chart."""


class ForeignElement(MorseStrataError, ValueError):
    pass


class NotAdjacent(MorseStrataError, ValueError):
    pass


class ConeViolation(MorseStrataError):
    pass


class CocycleError(MorseStrataError):
    pass


class MissingStratumData(MorseStrataError, KeyError):
    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__(f"no stratum data for classes: {', '.join(self.missing)}")

    def __str__(self):
        return self.args[0]


class CacheCorrupted(MorseStrataError):
    pass
