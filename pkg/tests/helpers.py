"""Shared builders for tests: random datasets and metadata scaffolding."""

from __future__ import annotations

import string

from vibrancy.core import (
    IndexMetadata,
    IndicatorDefinition,
    ObservationTable,
    PillarDefinition,
    ScaleMode,
    SubIndexDefinition,
    WeightConfig,
)


def build_metadata(pillar_specs, sub_indices=()):
    """pillar_specs: [(pillar_id, pillar_weight, [(ind_id, weight), ...])]."""
    pillars = []
    indicators = []
    member_of = {}
    for sub in sub_indices:
        for ind_id in sub[2]:
            member_of.setdefault(ind_id, set()).add(sub[0])
    for pillar_id, pillar_weight, inds in pillar_specs:
        pillars.append(PillarDefinition(pillar_id, pillar_id.title(), pillar_weight))
        for ind_id, weight in inds:
            indicators.append(
                IndicatorDefinition(
                    id=ind_id,
                    display_name=ind_id.replace("_", " ").title(),
                    pillar_id=pillar_id,
                    default_weight=weight,
                    scale_mode=ScaleMode.RATE,
                    sub_indices=frozenset(member_of.get(ind_id, ())),
                )
            )
    subs = [SubIndexDefinition(s[0], s[1], tuple(s[2])) for s in sub_indices]
    return IndexMetadata(pillars, indicators, subs)


def pillars_struct(metadata, weights=None):
    """Oracle-shaped view of metadata plus an optional weight config."""
    weights = weights or metadata.default_weights()
    struct = []
    for pillar in metadata.pillars:
        inds = [
            (ind_id, weights.indicator_weights.get(ind_id, metadata.indicator(ind_id).default_weight))
            for ind_id in metadata.indicators_for_pillar(pillar.id)
        ]
        struct.append(
            (pillar.id, weights.pillar_weights.get(pillar.id, pillar.default_weight), inds)
        )
    return struct


def make_random_dataset(rng, max_countries=10, max_pillars=8, max_indicators=5,
                        max_years=3, missing_rate=0.15):
    """Random dataset for oracle cross-checks.

    Returns (table, metadata, countries, years). Every indicator keeps at
    least one observed value per year so nothing is silently excluded;
    exclusion behavior has its own dedicated tests.
    """
    n_countries = rng.randint(2, max_countries)
    countries = [f"C{string.ascii_uppercase[i]}" for i in range(n_countries)]
    n_years = rng.randint(1, max_years)
    years = [2000 + i for i in range(n_years)]

    pillar_specs = []
    ind_counter = 0
    for p in range(rng.randint(1, max_pillars)):
        inds = []
        for _ in range(rng.randint(1, max_indicators)):
            inds.append((f"ind_{ind_counter}", rng.randint(1, 10)))
            ind_counter += 1
        pillar_specs.append((f"pillar_{p}", rng.randint(1, 10), inds))
    metadata = build_metadata(pillar_specs)

    entries = {}
    for year in years:
        for _, _, inds in pillar_specs:
            for ind_id, _ in inds:
                guaranteed = rng.choice(countries)
                for country in countries:
                    if country != guaranteed and rng.random() < missing_rate:
                        continue
                    entries[(country, year, ind_id)] = rng.uniform(-1000.0, 1000.0)
    table = ObservationTable(entries, countries=countries, years=years)
    return table, metadata, countries, years


def weights_of(metadata) -> WeightConfig:
    return metadata.default_weights()
