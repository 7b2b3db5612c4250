"""Ranking of countries by index value, and rank series across years.

Ties are handled by competition ranking: countries with exactly equal
scores share a rank and the next distinct score skips ahead ("1,1,3").
Within a tie, rows are ordered alphabetically by country code so output
is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .core import (
    IndexMetadata,
    ObservationTable,
    PopulationTable,
    ScoreCard,
    WeightConfig,
    compute_scores,
    per_capita_transform,
)
from .errors import DuplicateCountry, EmptyInput, UnknownYear

__all__ = [
    "PopulationTable",
    "RankingRow",
    "RankingTable",
    "RankTrajectory",
    "per_capita_transform",
    "rank_by_score",
    "rank_trajectories",
    "ranking_from_cards",
]


@dataclass(frozen=True)
class RankingRow:
    rank: int
    country: str
    index_value: float
    pillar_scores: dict = field(default_factory=dict)


@dataclass
class RankingTable:
    year: int
    per_capita: bool
    rows: list
    weight_fingerprint: str = ""


@dataclass
class RankTrajectory:
    country: str
    points: dict  # year -> rank


def rank_by_score(
    scores,
    year: int,
    per_capita: bool = False,
    pillar_scores: Optional[Mapping] = None,
    weight_fingerprint: str = "",
) -> RankingTable:
    """Build a RankingTable from (country, index_value) pairs.

    `scores` may be a mapping or an iterable of pairs. `pillar_scores`
    optionally supplies a per-country dict of pillar scores to carry on
    each row.
    """
    pairs = list(scores.items()) if isinstance(scores, Mapping) else list(scores)
    if not pairs:
        raise EmptyInput("no scores to rank")
    seen = set()
    for country, _ in pairs:
        if country in seen:
            raise DuplicateCountry(country)
        seen.add(country)

    pairs.sort(key=lambda cv: (-cv[1], cv[0]))
    rows = []
    for pos, (country, value) in enumerate(pairs):
        if pos > 0 and value == pairs[pos - 1][1]:
            rank = rows[-1].rank
        else:
            rank = pos + 1
        rows.append(
            RankingRow(
                rank=rank,
                country=country,
                index_value=value,
                pillar_scores=dict(pillar_scores.get(country, {})) if pillar_scores else {},
            )
        )
    return RankingTable(
        year=year, per_capita=per_capita, rows=rows, weight_fingerprint=weight_fingerprint
    )


def ranking_from_cards(
    cards: Iterable[ScoreCard],
    per_capita: bool = False,
    weight_fingerprint: str = "",
) -> RankingTable:
    """RankingTable view of compute_scores output (ranks recomputed)."""
    cards = list(cards)
    if not cards:
        raise EmptyInput("no score cards to rank")
    return rank_by_score(
        [(card.country, card.index_value) for card in cards],
        year=cards[0].year,
        per_capita=per_capita,
        pillar_scores={card.country: card.pillar_scores for card in cards},
        weight_fingerprint=weight_fingerprint,
    )


def rank_trajectories(
    observations: ObservationTable,
    metadata: IndexMetadata,
    weights: Optional[WeightConfig] = None,
    years: Iterable[int] = (),
    per_capita: bool = False,
    population: Optional[PopulationTable] = None,
) -> list:
    """Per-country rank series over the given years.

    Each year is an independent computation: its own minima, maxima,
    medians, and exclusions. Returned trajectories are sorted by country.
    """
    years = sorted(set(years))
    if not years:
        raise EmptyInput("no years requested")
    for year in years:
        if year not in observations.years:
            raise UnknownYear(year)

    points = {country: {} for country in observations.countries}
    for year in years:
        cards = compute_scores(
            observations,
            metadata,
            weights=weights,
            year=year,
            per_capita=per_capita,
            population=population,
        )
        table = rank_by_score([(c.country, c.index_value) for c in cards], year=year)
        for row in table.rows:
            points[row.country][year] = row.rank
    return [RankTrajectory(country=c, points=points[c]) for c in sorted(points)]
