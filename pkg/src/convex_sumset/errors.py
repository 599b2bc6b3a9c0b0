class ConstructionError(Exception):
    """Base class for failures of the construction pipeline."""


class NoBlocks(ConstructionError):
    pass


class NoNesting(ConstructionError):
    def __init__(self, message: str, k_from: int | None = None, k_to: int | None = None):
        super().__init__(message)
        self.k_from = k_from
        self.k_to = k_to


class NestingViolated(ConstructionError):
    pass


class ConvexityBroken(ConstructionError):
    """An exact re-check failed where the gluing lemma guarantees success."""


class WitnessMismatch(ConstructionError):
    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


class PairOutOfRange(ConstructionError):
    pass


class BudgetExceeded(Exception):
    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required
