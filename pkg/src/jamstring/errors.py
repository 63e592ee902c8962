"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a model."""


class CalibrationError(ValueError):
    pass


class DegenerateFitError(ValueError):
    pass


class NoHalvingError(ValueError):
    pass


class GridTooLargeError(ValueError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"sweep grid has {size} points, exceeds cap {cap}; raise the cap to at least {size}")
        self.size = size
        self.cap = cap


class IngestionError(ValueError):
    """Raised with every offending line of a measurement file at once."""

    def __init__(self, problems: list[tuple[int, str]]):
        self.problems = problems
        lines = "\n".join(f"  line {n}: {msg}" for n, msg in problems)
        super().__init__(f"{len(problems)} problem(s) in measurement data:\n{lines}")


class ConfigError(ValueError):
    pass
