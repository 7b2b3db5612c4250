"""Scoring pipeline: min-max normalization, median imputation, and two-level
weighted aggregation of a country/year/indicator panel.

The pipeline for one year is fixed:

1. optional per-capita transform of absolute-mode indicators,
2. median imputation per indicator (indicators with no data that year are
   excluded and their weight implicitly redistributed by renormalization),
3. min-max normalization per indicator to [0, 100],
4. weighted average per pillar,
5. weighted average of pillar scores into the index value.

Everything here is a pure function of its inputs; tables are immutable once
built. Weighted sums use math.fsum, so results do not depend on input
ordering.
"""

from __future__ import annotations

import hashlib
import json
import math
import statistics
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

from .errors import (
    DuplicateKey,
    EmptyInput,
    EmptySlice,
    MissingPopulation,
    SchemaError,
    UnknownPillar,
    UnknownSubIndex,
    UnknownYear,
    WeightOutOfRange,
    ZeroWeightSum,
)

ObservationKey = "tuple[str, int, str]"  # (country, year, indicator)


class ScaleMode(str, Enum):
    """Whether the per-capita view divides the indicator by population."""

    ABSOLUTE = "absolute"  # counts, currency totals: divided by population
    RATE = "rate"  # ratios, percentages, sentiment, binary flags: passed through


@dataclass(frozen=True)
class PillarDefinition:
    id: str
    display_name: str
    default_weight: float


@dataclass(frozen=True)
class IndicatorDefinition:
    id: str
    display_name: str
    pillar_id: str
    default_weight: float
    scale_mode: ScaleMode
    sub_indices: frozenset = frozenset()
    source: str = ""


@dataclass(frozen=True)
class SubIndexDefinition:
    id: str
    display_name: str
    indicator_ids: tuple


class IndexMetadata:
    """Validated pillar/indicator/sub-index definitions, in declaration order."""

    def __init__(
        self,
        pillars: Iterable[PillarDefinition],
        indicators: Iterable[IndicatorDefinition],
        sub_indices: Iterable[SubIndexDefinition] = (),
    ):
        self.pillars = tuple(pillars)
        self.indicators = tuple(indicators)
        self.sub_indices = tuple(sub_indices)

        self._pillar_by_id = {}
        for p in self.pillars:
            if p.id in self._pillar_by_id:
                raise SchemaError(f"duplicate pillar id {p.id!r}")
            _check_weight_range(p.id, p.default_weight)
            self._pillar_by_id[p.id] = p

        self._indicator_by_id = {}
        for ind in self.indicators:
            if ind.id in self._indicator_by_id:
                raise SchemaError(f"duplicate indicator id {ind.id!r}")
            if ind.pillar_id not in self._pillar_by_id:
                raise UnknownPillar(ind.pillar_id, ind.id)
            _check_weight_range(ind.id, ind.default_weight)
            self._indicator_by_id[ind.id] = ind

        self._sub_index_by_id = {}
        for sub in self.sub_indices:
            if sub.id in self._sub_index_by_id:
                raise SchemaError(f"duplicate sub-index id {sub.id!r}")
            for ind_id in sub.indicator_ids:
                if ind_id not in self._indicator_by_id:
                    raise SchemaError(
                        f"sub-index {sub.id!r} lists unknown indicator {ind_id!r}"
                    )
            self._sub_index_by_id[sub.id] = sub

        for ind in self.indicators:
            for sub_id in ind.sub_indices:
                if sub_id not in self._sub_index_by_id:
                    raise SchemaError(
                        f"indicator {ind.id!r} tagged with unknown sub-index {sub_id!r}"
                    )

        self._members = {p.id: [] for p in self.pillars}
        for ind in self.indicators:
            self._members[ind.pillar_id].append(ind.id)

    def pillar(self, pillar_id: str) -> PillarDefinition:
        return self._pillar_by_id[pillar_id]

    def indicator(self, indicator_id: str) -> IndicatorDefinition:
        return self._indicator_by_id[indicator_id]

    def has_indicator(self, indicator_id: str) -> bool:
        return indicator_id in self._indicator_by_id

    def indicators_for_pillar(self, pillar_id: str) -> tuple:
        return tuple(self._members[pillar_id])

    def sub_index(self, sub_index_id: str) -> SubIndexDefinition:
        try:
            return self._sub_index_by_id[sub_index_id]
        except KeyError:
            raise UnknownSubIndex(sub_index_id) from None

    def default_weights(self) -> "WeightConfig":
        return WeightConfig(
            indicator_weights={i.id: float(i.default_weight) for i in self.indicators},
            pillar_weights={p.id: float(p.default_weight) for p in self.pillars},
        )

    def without_indicator(self, indicator_id: str) -> "IndexMetadata":
        """Copy with one indicator removed (used by exclusion-equivalence checks)."""
        indicators = [i for i in self.indicators if i.id != indicator_id]
        subs = [
            SubIndexDefinition(
                s.id,
                s.display_name,
                tuple(i for i in s.indicator_ids if i != indicator_id),
            )
            for s in self.sub_indices
        ]
        return IndexMetadata(self.pillars, indicators, subs)


def _check_weight_range(key: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and 0 <= value <= 10):
        raise WeightOutOfRange(key, value)


class ObservationTable:
    """Raw values keyed by (country, year, indicator); absent key = missing.

    Countries and years are kept as sorted tuples; a country registered
    without any data still participates in scoring (it receives imputed
    values for every non-excluded indicator).
    """

    def __init__(self, entries, countries: Iterable[str] = (), years: Iterable[int] = ()):
        data = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for key, value in items:
            country, year, indicator = key
            if key in data:
                raise DuplicateKey(key)
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(f"non-finite value for {key!r}")
            data[(str(country), int(year), str(indicator))] = value
        self._entries = data
        self.countries = tuple(sorted({k[0] for k in data} | set(countries)))
        self.years = tuple(sorted({k[1] for k in data} | {int(y) for y in years}))
        self.indicator_ids = tuple(sorted({k[2] for k in data}))

    @property
    def entries(self) -> Mapping:
        return MappingProxyType(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ObservationTable):
            return NotImplemented
        return (
            self._entries == other._entries
            and self.countries == other.countries
            and self.years == other.years
        )

    def get(self, country: str, year: int, indicator: str) -> Optional[float]:
        return self._entries.get((country, year, indicator))

    def year_slice(self, year: int, indicator: str) -> dict:
        """Observed values for one (year, indicator), keyed by country, sorted."""
        out = {}
        for c in self.countries:
            v = self._entries.get((c, year, indicator))
            if v is not None:
                out[c] = v
        return out

    def merged(self, extra_entries: Mapping) -> "ObservationTable":
        """New table with extra entries added; duplicates are an error."""
        for key in extra_entries:
            if key in self._entries:
                raise DuplicateKey(key)
        combined = dict(self._entries)
        combined.update(extra_entries)
        return ObservationTable(combined, countries=self.countries, years=self.years)


class PopulationTable:
    """Positive person counts keyed by (country, year)."""

    def __init__(self, entries: Mapping):
        data = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for key, value in items:
            country, year = key
            if key in data:
                raise DuplicateKey(key)
            value = float(value)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"population for {key!r} must be positive, got {value!r}")
            data[(str(country), int(year))] = value
        self._entries = data

    @property
    def entries(self) -> Mapping:
        return MappingProxyType(self._entries)

    def get(self, country: str, year: int) -> Optional[float]:
        return self._entries.get((country, year))


@dataclass(frozen=True)
class WeightConfig:
    """Indicator weights w_i and pillar weights W_j, each in [0, 10].

    Fractional weights are accepted (sliders move in sub-integer steps);
    the shipped defaults are integers.
    """

    indicator_weights: Mapping
    pillar_weights: Mapping

    def __post_init__(self):
        for key, value in {**self.indicator_weights, **self.pillar_weights}.items():
            _check_weight_range(key, value)
        object.__setattr__(self, "indicator_weights", dict(self.indicator_weights))
        object.__setattr__(self, "pillar_weights", dict(self.pillar_weights))

    def merged(self, indicator_overrides=None, pillar_overrides=None) -> "WeightConfig":
        """New config with the given partial overrides applied over self."""
        ind = dict(self.indicator_weights)
        ind.update(indicator_overrides or {})
        pil = dict(self.pillar_weights)
        pil.update(pillar_overrides or {})
        return WeightConfig(ind, pil)

    def fingerprint(self) -> str:
        canonical = json.dumps(
            {
                "indicator_weights": {k: repr(float(v)) for k, v in sorted(self.indicator_weights.items())},
                "pillar_weights": {k: repr(float(v)) for k, v in sorted(self.pillar_weights.items())},
            },
            sort_keys=True,
        )
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


@dataclass
class NormalizedTable:
    """Normalized scores in [0, 100] plus imputation/exclusion bookkeeping."""

    entries: dict = field(default_factory=dict)  # (country, year, indicator) -> score
    imputed_flags: set = field(default_factory=set)  # keys whose value was imputed
    excluded_indicators: dict = field(default_factory=dict)  # year -> frozenset of ids


@dataclass(frozen=True)
class IndicatorScore:
    raw_value: Optional[float]  # value fed into normalization; None when imputed
    normalized: float
    effective_weight_share: float  # w_i / sum(w) over surviving pillar members
    imputed: bool


@dataclass
class ScoreCard:
    country: str
    year: int
    pillar_scores: dict  # pillar_id -> score, surviving pillars only
    index_value: float
    indicator_scores: dict  # indicator_id -> IndicatorScore, non-excluded only
    rank: int


# ---------------------------------------------------------------------------
# Pipeline steps


def minmax_scale(values: Mapping) -> dict:
    """Min-max scale a country->value map to [0, 100].

    A slice with no spread (min == max) carries no discriminating
    information; every present country gets the neutral midpoint 50.
    """
    if not values:
        raise EmptySlice("no values to scale")
    lo = min(values.values())
    hi = max(values.values())
    if lo == hi:
        return {c: 50.0 for c in sorted(values)}
    span = hi - lo
    return {c: (values[c] - lo) / span * 100.0 for c in sorted(values)}


def normalize_year(
    observations: ObservationTable,
    year: int,
    indicator_id: str,
    countries: Optional[Iterable[str]] = None,
) -> dict:
    """Min-max scores for one (year, indicator) across observed countries.

    Countries without a value are absent from the result; in the full
    pipeline imputation runs first, so every country has one.
    """
    pool = tuple(countries) if countries is not None else observations.countries
    values = {}
    for c in sorted(pool):
        v = observations.get(c, year, indicator_id)
        if v is not None:
            values[c] = v
    if not values:
        raise EmptySlice(f"no values for indicator {indicator_id!r} in {year}")
    return minmax_scale(values)


def impute_year(
    observations: ObservationTable,
    year: int,
    indicator_ids: Iterable[str],
    countries: Iterable[str],
):
    """Fill missing values with the per-indicator median across countries.

    Returns (completed, imputed, excluded) where completed maps
    indicator -> country -> value for every indicator with at least one
    observation, imputed is the set of (indicator, country) pairs that were
    filled, and excluded is the set of indicators with no data at all for
    this year. An even number of observations takes the mean of the two
    central order statistics.
    """
    indicator_ids = tuple(indicator_ids)
    countries = tuple(sorted(countries))
    if not indicator_ids:
        raise ValueError("indicator_ids must be nonempty")
    if not countries:
        raise ValueError("countries must be nonempty")

    completed = {}
    imputed = set()
    excluded = set()
    for ind in indicator_ids:
        observed = {}
        for c in countries:
            v = observations.get(c, year, ind)
            if v is not None:
                observed[c] = v
        if not observed:
            excluded.add(ind)
            continue
        med = statistics.median(observed.values())
        values = {}
        for c in countries:
            if c in observed:
                values[c] = observed[c]
            else:
                values[c] = med
                imputed.add((ind, c))
        completed[ind] = values
    return completed, imputed, frozenset(excluded)


def pillar_score(normalized: Mapping, weights: Mapping, pillar_id: str = "") -> float:
    """Weighted average of normalized scores over the surviving indicators.

    Excluded indicators are simply absent from `normalized`; shrinking the
    denominator this way is algebraically the same as redistributing their
    weight proportionally over the rest.
    """
    for ind_id in normalized:
        _check_weight_range(ind_id, weights[ind_id])
    wsum = math.fsum(weights[i] for i in normalized)
    if wsum <= 0:
        raise ZeroWeightSum(f"pillar {pillar_id!r}" if pillar_id else "indicator weights")
    return math.fsum(weights[i] * normalized[i] for i in normalized) / wsum


def vibrancy_index(pillar_scores: Mapping, pillar_weights: Mapping) -> float:
    """Weighted average of pillar scores; only pillars with a score count."""
    for pid in pillar_scores:
        _check_weight_range(pid, pillar_weights[pid])
    wsum = math.fsum(pillar_weights[p] for p in pillar_scores)
    if wsum <= 0:
        raise ZeroWeightSum("pillar weights")
    return math.fsum(pillar_weights[p] * pillar_scores[p] for p in pillar_scores) / wsum


def per_capita_transform(
    observations: ObservationTable,
    metadata: IndexMetadata,
    population: Optional[PopulationTable],
) -> ObservationTable:
    """Divide absolute-mode values by population in millions.

    Rate-mode indicators (ratios, percentages, sentiment, binary flags)
    pass through unchanged. Unit choice (per million) cannot influence
    normalized scores; min-max removes scale.
    """
    absolute = {i.id for i in metadata.indicators if i.scale_mode is ScaleMode.ABSOLUTE}
    entries = {}
    for key, value in observations.entries.items():
        country, year, indicator = key
        if indicator in absolute:
            pop = population.get(country, year) if population is not None else None
            if pop is None:
                raise MissingPopulation(country, year)
            entries[key] = value / (pop / 1_000_000.0)
        else:
            entries[key] = value
    return ObservationTable(entries, countries=observations.countries, years=observations.years)


def competition_ranks(scores: Mapping) -> dict:
    """Competition ranking: rank = 1 + number of strictly greater scores."""
    ordered = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    ranks = {}
    for pos, (key, value) in enumerate(ordered):
        if pos > 0 and value == ordered[pos - 1][1]:
            ranks[key] = ranks[ordered[pos - 1][0]]
        else:
            ranks[key] = pos + 1
    return ranks


def normalize_table(
    observations: ObservationTable,
    metadata: IndexMetadata,
    years: Optional[Iterable[int]] = None,
) -> NormalizedTable:
    """Imputed + normalized scores for every (country, year, indicator)."""
    result = NormalizedTable()
    indicator_ids = [i.id for i in metadata.indicators]
    for year in sorted(years) if years is not None else observations.years:
        if year not in observations.years:
            raise UnknownYear(year)
        completed, imputed, excluded = impute_year(
            observations, year, indicator_ids, observations.countries
        )
        result.excluded_indicators[year] = excluded
        for ind, values in completed.items():
            scaled = minmax_scale(values)
            for country, score in scaled.items():
                key = (country, year, ind)
                result.entries[key] = score
                if (ind, country) in imputed:
                    result.imputed_flags.add(key)
    return result


# ---------------------------------------------------------------------------
# Full per-year computation


def compute_scores(
    observations: ObservationTable,
    metadata: IndexMetadata,
    weights: Optional[WeightConfig] = None,
    year: int = 0,
    per_capita: bool = False,
    population: Optional[PopulationTable] = None,
) -> list:
    """Run the full pipeline for one year; one ScoreCard per country.

    Cards come back in ranking order (index value descending, country code
    breaking ties alphabetically).
    """
    return _compute_cards(observations, metadata, weights, year, per_capita, population, scope=None)


def compute_sub_index(
    observations: ObservationTable,
    metadata: IndexMetadata,
    weights: Optional[WeightConfig] = None,
    sub_index: Union[str, SubIndexDefinition] = "",
    year: int = 0,
    per_capita: bool = False,
    population: Optional[PopulationTable] = None,
) -> list:
    """Same pipeline restricted to a sub-index's indicator set.

    Pillar scores are recomputed over only the member indicators of each
    intersecting pillar, then combined with those pillars' weights.
    """
    if isinstance(sub_index, str):
        sub_index = metadata.sub_index(sub_index)
    if not sub_index.indicator_ids:
        raise EmptyInput(f"sub-index {sub_index.id!r} has no indicators")
    scope = set(sub_index.indicator_ids)
    return _compute_cards(observations, metadata, weights, year, per_capita, population, scope=scope)


def _compute_cards(observations, metadata, weights, year, per_capita, population, scope):
    if year not in observations.years:
        raise UnknownYear(year)
    if not observations.countries:
        raise EmptyInput("no countries in the observation table")
    if weights is None:
        weights = metadata.default_weights()

    table = per_capita_transform(observations, metadata, population) if per_capita else observations

    indicator_ids = [
        i.id for i in metadata.indicators if scope is None or i.id in scope
    ]
    if not indicator_ids:
        raise EmptyInput("no indicators in scope")
    countries = table.countries

    completed, imputed, excluded = impute_year(table, year, indicator_ids, countries)
    normalized = {ind: minmax_scale(values) for ind, values in completed.items()}

    ind_weight = {
        i.id: float(weights.indicator_weights.get(i.id, i.default_weight))
        for i in metadata.indicators
    }
    pil_weight = {
        p.id: float(weights.pillar_weights.get(p.id, p.default_weight))
        for p in metadata.pillars
    }

    shares = {}
    pillar_values = {}  # pillar_id -> {country: score}, surviving pillars only
    dropped = []
    for pillar in metadata.pillars:
        members = [
            i for i in metadata.indicators_for_pillar(pillar.id)
            if i in normalized
        ]
        if not members:
            continue  # pillar has no in-scope data this year
        wsum = math.fsum(ind_weight[i] for i in members)
        if wsum <= 0:
            # Zero total weight: the pillar contributes nothing, exactly as
            # if it were removed from the index.
            for i in members:
                shares[i] = 0.0
            dropped.append(pillar.id)
            continue
        for i in members:
            shares[i] = ind_weight[i] / wsum
        pillar_values[pillar.id] = {
            c: math.fsum(ind_weight[i] * normalized[i][c] for i in members) / wsum
            for c in countries
        }

    if not pillar_values:
        raise ZeroWeightSum(
            "pillar(s) " + ", ".join(repr(p) for p in dropped) if dropped else "pillar weights"
        )
    index_wsum = math.fsum(pil_weight[p] for p in pillar_values)
    if index_wsum <= 0:
        raise ZeroWeightSum("pillar weights")
    index_values = {
        c: math.fsum(pil_weight[p] * pillar_values[p][c] for p in pillar_values) / index_wsum
        for c in countries
    }
    ranks = competition_ranks(index_values)

    cards = []
    for country in countries:
        indicator_scores = {}
        for ind in indicator_ids:
            if ind not in normalized:
                continue  # excluded this year
            was_imputed = (ind, country) in imputed
            indicator_scores[ind] = IndicatorScore(
                raw_value=None if was_imputed else completed[ind][country],
                normalized=normalized[ind][country],
                effective_weight_share=shares.get(ind, 0.0),
                imputed=was_imputed,
            )
        cards.append(
            ScoreCard(
                country=country,
                year=year,
                pillar_scores={p: pillar_values[p][country] for p in pillar_values},
                index_value=index_values[country],
                indicator_scores=indicator_scores,
                rank=ranks[country],
            )
        )
    cards.sort(key=lambda card: (-card.index_value, card.country))
    return cards
