"""Exception hierarchy shared across the engine.

Loaders raise `DataError` subclasses (bad files, bad references); the
computation pipeline raises `ComputationError` subclasses (degenerate
inputs). The CLI maps DataError to exit code 3 and ZeroWeightSum to 4.
"""


class VibrancyError(Exception):
    """Base class for all engine errors."""


class ComputationError(VibrancyError):
    pass


class EmptySlice(ComputationError):
    """No country has a value for the requested (year, indicator)."""


class ZeroWeightSum(ComputationError):
    """All surviving weights at one aggregation level are zero.

    `scope` names the offending level, e.g. "pillar 'economy'" or
    "pillar weights".
    """

    def __init__(self, scope: str):
        self.scope = scope
        super().__init__(f"weight sum is zero for {scope}")


class UnknownYear(ComputationError):
    def __init__(self, year: int):
        self.year = year
        super().__init__(f"year {year} is not present in the dataset")


class MissingPopulation(ComputationError):
    def __init__(self, country: str, year: int):
        self.country = country
        self.year = year
        super().__init__(f"no population for ({country}, {year})")


class ZeroTotal(ComputationError):
    """Model-production total is zero; the derived value is undefined."""


class BothZero(ComputationError):
    """Female and male talent concentrations are both zero (0/0)."""


class EmptyInput(ComputationError):
    pass


class DuplicateCountry(ComputationError):
    def __init__(self, country: str):
        self.country = country
        super().__init__(f"duplicate country in scores: {country}")


class DataError(VibrancyError):
    pass


class ParseError(DataError):
    def __init__(self, message: str, source: str = "", row: int | None = None):
        self.source = source
        self.row = row
        where = f"{source}:{row}: " if row is not None else (f"{source}: " if source else "")
        super().__init__(f"{where}{message}")


class DuplicateKey(DataError):
    def __init__(self, key, source: str = ""):
        self.key = key
        where = f"{source}: " if source else ""
        super().__init__(f"{where}duplicate key {key!r}")


class UnknownIndicator(DataError):
    def __init__(self, indicator_id: str, source: str = ""):
        self.indicator_id = indicator_id
        where = f"{source}: " if source else ""
        super().__init__(f"{where}unknown indicator id {indicator_id!r}")


class UnknownCountry(DataError):
    def __init__(self, country: str, source: str = ""):
        self.country = country
        where = f"{source}: " if source else ""
        super().__init__(f"{where}country {country!r} is not in the metadata country list")


class UnknownSubIndex(DataError):
    def __init__(self, sub_index_id: str):
        self.sub_index_id = sub_index_id
        super().__init__(f"unknown sub-index id {sub_index_id!r}")


class SchemaError(DataError):
    pass


class UnknownPillar(DataError):
    def __init__(self, pillar_id: str, indicator_id: str = ""):
        self.pillar_id = pillar_id
        tail = f" (referenced by indicator {indicator_id!r})" if indicator_id else ""
        super().__init__(f"unknown pillar id {pillar_id!r}{tail}")


class WeightOutOfRange(DataError):
    def __init__(self, key: str, value: float):
        self.key = key
        self.value = value
        super().__init__(f"weight for {key!r} is {value!r}, outside [0, 10]")
