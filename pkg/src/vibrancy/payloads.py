"""JSON payload builders shared by the CLI and the HTTP service.

Both front ends serialize through these functions, which is what makes
their outputs value-identical for equivalent queries. Conventions:
snake_case field names, floats rounded to 6 decimal places, ranks as
plain integers, missing values as null.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Optional

from .core import IndexMetadata, ObservationTable, ScoreCard, WeightConfig
from .ingest import CoverageReport, DatasetBundle, weight_shares


def r6(value: float) -> float:
    return round(float(value), 6)


def ranking_payload(
    cards: Iterable[ScoreCard],
    metadata: IndexMetadata,
    weights: WeightConfig,
    per_capita: bool = False,
    sub_index: Optional[str] = None,
    country_names: Optional[Mapping] = None,
) -> dict:
    """Ranking rows plus enough per-row detail to render every UI view.

    pillar_contributions are W_j * p_jk / sum(W) over surviving pillars,
    so they add up to the index value; indicator contributions likewise
    add up within the whole index. Clients never need to redo the math.
    """
    cards = list(cards)
    names = country_names or {}
    pillar_weight = {
        p.id: float(weights.pillar_weights.get(p.id, p.default_weight))
        for p in metadata.pillars
    }
    rows = []
    for card in cards:
        surviving = list(card.pillar_scores)
        wsum = math.fsum(pillar_weight[p] for p in surviving)
        contributions = {
            p: r6(pillar_weight[p] * card.pillar_scores[p] / wsum) for p in surviving
        }
        indicator_scores = {}
        for ind_id, score in card.indicator_scores.items():
            pillar_id = metadata.indicator(ind_id).pillar_id
            if pillar_id in card.pillar_scores:
                contribution = (
                    score.normalized
                    * score.effective_weight_share
                    * pillar_weight[pillar_id]
                    / wsum
                )
            else:
                contribution = 0.0
            indicator_scores[ind_id] = {
                "raw_value": None if score.raw_value is None else r6(score.raw_value),
                "normalized": r6(score.normalized),
                "weight_share": r6(score.effective_weight_share),
                "imputed": score.imputed,
                "contribution": r6(contribution),
            }
        rows.append(
            {
                "rank": int(card.rank),
                "country": card.country,
                "country_name": names.get(card.country, card.country),
                "index_value": r6(card.index_value),
                "pillar_scores": {p: r6(s) for p, s in card.pillar_scores.items()},
                "pillar_contributions": contributions,
                "indicator_scores": indicator_scores,
            }
        )
    return {
        "year": cards[0].year if cards else None,
        "per_capita": bool(per_capita),
        "sub_index": sub_index,
        "weight_fingerprint": weights.fingerprint(),
        "rows": rows,
    }


def scorecards_payload(
    cards: Iterable[ScoreCard],
    metadata: IndexMetadata,
    weights: WeightConfig,
    per_capita: bool = False,
    country_names: Optional[Mapping] = None,
) -> dict:
    """Full score cards; same shape as ranking_payload (it is one)."""
    return ranking_payload(
        cards, metadata, weights, per_capita=per_capita, country_names=country_names
    )


def trajectories_payload(trajectories, per_capita: bool = False) -> dict:
    return {
        "per_capita": bool(per_capita),
        "trajectories": [
            {
                "country": t.country,
                "points": [
                    {"year": int(year), "rank": int(rank)}
                    for year, rank in sorted(t.points.items())
                ],
            }
            for t in trajectories
        ],
    }


def metrics_payload(
    observations: ObservationTable,
    metadata: IndexMetadata,
    indicator_id: str,
    countries: Iterable[str],
    years: Iterable[int],
    country_names: Optional[Mapping] = None,
) -> dict:
    definition = metadata.indicator(indicator_id)
    names = country_names or {}
    series = []
    for country in countries:
        points = []
        for year in years:
            value = observations.get(country, year, indicator_id)
            points.append(
                {
                    "year": int(year),
                    "value": None if value is None else r6(value),
                    "missing": value is None,
                }
            )
        series.append(
            {"country": country, "country_name": names.get(country, country), "points": points}
        )
    return {
        "indicator": {
            "id": definition.id,
            "name": definition.display_name,
            "pillar": definition.pillar_id,
            "scale_mode": definition.scale_mode.value,
            "source": definition.source,
        },
        "series": series,
    }


def coverage_payload(report: CoverageReport) -> dict:
    by_country = {}
    for country in report.countries:
        by_country[country] = {
            str(year): r6(report.by_country_year[(country, year)]) for year in report.years
        }
    by_indicator = {}
    for ind in report.indicator_ids:
        row = {}
        for year in report.years:
            fraction = report.by_indicator_year[(ind, year)]
            row[str(year)] = None if fraction is None else r6(fraction)
        by_indicator[ind] = row
    return {
        "years": [int(y) for y in report.years],
        "countries": list(report.countries),
        "indicators": list(report.indicator_ids),
        "by_country_year": by_country,
        "by_indicator_year": by_indicator,
    }


def warnings_payload(notes) -> dict:
    return {
        "warnings": [
            {
                "country": note.country,
                "mean_coverage": r6(note.mean_coverage),
                "years": [int(y) for y in note.years],
                "severity": note.severity,
                "message": note.message,
            }
            for note in notes
        ]
    }


def meta_payload(bundle: DatasetBundle) -> dict:
    metadata = bundle.metadata
    defaults = bundle.default_weights
    shares = weight_shares(defaults, metadata)
    return {
        "pillars": [
            {"id": p.id, "name": p.display_name, "default_weight": r6(p.default_weight)}
            for p in metadata.pillars
        ],
        "indicators": [
            {
                "id": i.id,
                "name": i.display_name,
                "pillar": i.pillar_id,
                "default_weight": r6(i.default_weight),
                "scale_mode": i.scale_mode.value,
                "sub_indices": sorted(i.sub_indices),
                "source": i.source,
            }
            for i in metadata.indicators
        ],
        "sub_indices": [
            {"id": s.id, "name": s.display_name, "indicator_ids": list(s.indicator_ids)}
            for s in metadata.sub_indices
        ],
        "countries": [
            {"code": code, "name": name} for code, name in bundle.country_names.items()
        ],
        "years": [int(y) for y in bundle.observations.years],
        "inclusion_overrides": sorted(bundle.inclusion_overrides),
        "weight_shares": {
            "pillars": {k: r6(v) for k, v in shares["pillars"].items()},
            "indicators": {k: r6(v) for k, v in shares["indicators"].items()},
        },
        "weight_fingerprint": defaults.fingerprint(),
    }
