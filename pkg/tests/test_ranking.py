"""Tests for ranking tables, tie handling, and rank trajectories."""

import pytest

from helpers import build_metadata

from vibrancy.core import ObservationTable, PopulationTable, compute_scores
from vibrancy.errors import DuplicateCountry, EmptyInput, UnknownYear
from vibrancy.ranking import (
    rank_by_score,
    rank_trajectories,
    ranking_from_cards,
)


class TestRankByScore:
    def test_strict_ordering(self):
        table = rank_by_score({"USA": 70.06, "CHN": 40.17, "GBR": 27.21}, year=2023)
        assert [(r.rank, r.country) for r in table.rows] == [
            (1, "USA"),
            (2, "CHN"),
            (3, "GBR"),
        ]

    def test_competition_tie_rule(self):
        table = rank_by_score({"X": 50.0, "Y": 50.0, "Z": 40.0}, year=2023)
        assert [(r.rank, r.country) for r in table.rows] == [(1, "X"), (1, "Y"), (3, "Z")]

    def test_ties_ordered_alphabetically(self):
        table = rank_by_score({"ZWE": 5.0, "ALB": 5.0, "MDA": 5.0}, year=2023)
        assert [r.country for r in table.rows] == ["ALB", "MDA", "ZWE"]
        assert [r.rank for r in table.rows] == [1, 1, 1]

    def test_rank_is_one_plus_strictly_better(self):
        scores = {"A": 9.0, "B": 7.0, "C": 7.0, "D": 7.0, "E": 1.0}
        table = rank_by_score(scores, year=2023)
        for row in table.rows:
            better = sum(1 for v in scores.values() if v > scores[row.country])
            assert row.rank == 1 + better

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            rank_by_score({}, year=2023)

    def test_duplicate_country(self):
        with pytest.raises(DuplicateCountry):
            rank_by_score([("USA", 1.0), ("USA", 2.0)], year=2023)

    def test_carries_fingerprint_and_pillars(self):
        table = rank_by_score(
            {"A": 2.0, "B": 1.0},
            year=2023,
            pillar_scores={"A": {"p": 2.0}, "B": {"p": 1.0}},
            weight_fingerprint="abc123",
        )
        assert table.weight_fingerprint == "abc123"
        assert table.rows[0].pillar_scores == {"p": 2.0}


def two_year_dataset():
    metadata = build_metadata([("p", 5, [("v", 5), ("w", 5)])])
    entries = {
        ("A", 2020, "v"): 1.0,
        ("B", 2020, "v"): 5.0,
        ("C", 2020, "v"): 9.0,
        ("A", 2020, "w"): 2.0,
        ("B", 2020, "w"): 4.0,
        ("C", 2020, "w"): 6.0,
        # year 2021: A's strong indicator doubles, everything else constant
        ("A", 2021, "v"): 2.0,
        ("B", 2021, "v"): 5.0,
        ("C", 2021, "v"): 9.0,
        ("A", 2021, "w"): 4.0,
        ("B", 2021, "w"): 4.0,
        ("C", 2021, "w"): 6.0,
    }
    return ObservationTable(entries), metadata


class TestRankTrajectories:
    def test_single_year_equals_rank_by_score(self):
        table, metadata = two_year_dataset()
        trajectories = rank_trajectories(table, metadata, years=[2020])
        cards = compute_scores(table, metadata, year=2020)
        reference = rank_by_score([(c.country, c.index_value) for c in cards], year=2020)
        ranks = {row.country: row.rank for row in reference.rows}
        for trajectory in trajectories:
            assert trajectory.points == {2020: ranks[trajectory.country]}

    def test_years_are_independent_and_improvement_shows(self):
        table, metadata = two_year_dataset()
        trajectories = {t.country: t.points for t in rank_trajectories(table, metadata, years=[2020, 2021])}
        assert trajectories["A"][2021] <= trajectories["A"][2020]

    def test_unknown_year(self):
        table, metadata = two_year_dataset()
        with pytest.raises(UnknownYear):
            rank_trajectories(table, metadata, years=[2020, 2022])

    def test_empty_years(self):
        table, metadata = two_year_dataset()
        with pytest.raises(EmptyInput):
            rank_trajectories(table, metadata, years=[])


class TestRankingFromCards:
    def test_matches_card_ranks(self):
        table, metadata = two_year_dataset()
        cards = compute_scores(table, metadata, year=2020)
        ranking = ranking_from_cards(cards, weight_fingerprint="fp")
        assert [(r.rank, r.country) for r in ranking.rows] == [
            (c.rank, c.country) for c in cards
        ]
        assert ranking.weight_fingerprint == "fp"


class TestPerCapitaProperties:
    def test_equal_populations_preserve_order(self):
        from vibrancy.core import ScaleMode, per_capita_transform
        from vibrancy.core import IndexMetadata, IndicatorDefinition, PillarDefinition

        metadata = IndexMetadata(
            [PillarDefinition("p", "P", 5)],
            [IndicatorDefinition("v", "V", "p", 5, ScaleMode.ABSOLUTE)],
        )
        table = ObservationTable(
            {("A", 2020, "v"): 10.0, ("B", 2020, "v"): 30.0, ("C", 2020, "v"): 20.0}
        )
        population = PopulationTable({(c, 2020): 5_000_000 for c in "ABC"})
        out = per_capita_transform(table, metadata, population)
        original = sorted("ABC", key=lambda c: table.get(c, 2020, "v"))
        transformed = sorted("ABC", key=lambda c: out.get(c, 2020, "v"))
        assert original == transformed

    def test_rate_mode_idempotent(self):
        from vibrancy.core import ScaleMode, per_capita_transform
        from vibrancy.core import IndexMetadata, IndicatorDefinition, PillarDefinition

        metadata = IndexMetadata(
            [PillarDefinition("p", "P", 5)],
            [IndicatorDefinition("r", "R", "p", 5, ScaleMode.RATE)],
        )
        table = ObservationTable({("A", 2020, "r"): 1.3})
        population = PopulationTable({("A", 2020): 123})
        once = per_capita_transform(table, metadata, population)
        twice = per_capita_transform(once, metadata, population)
        assert once.entries == twice.entries


def test_new_country_within_extremes_leaves_existing_scores_alone():
    """Complete data, new country inside every [min, max]: existing
    normalized, pillar, and index values stay put within 1e-12."""
    metadata = build_metadata([("p", 5, [("v", 3), ("w", 7)]), ("q", 2, [("u", 4)])])
    base_entries = {
        ("A", 2020, "v"): 10.0,
        ("B", 2020, "v"): 50.0,
        ("A", 2020, "w"): 5.0,
        ("B", 2020, "w"): 1.0,
        ("A", 2020, "u"): 0.0,
        ("B", 2020, "u"): 100.0,
    }
    base = ObservationTable(base_entries)
    extended_entries = dict(base_entries)
    extended_entries.update(
        {("N", 2020, "v"): 30.0, ("N", 2020, "w"): 3.0, ("N", 2020, "u"): 42.0}
    )
    extended = ObservationTable(extended_entries)

    before = {c.country: c for c in compute_scores(base, metadata, year=2020)}
    after = {c.country: c for c in compute_scores(extended, metadata, year=2020)}
    for country in ("A", "B"):
        assert abs(before[country].index_value - after[country].index_value) <= 1e-12
        for pid in before[country].pillar_scores:
            assert (
                abs(before[country].pillar_scores[pid] - after[country].pillar_scores[pid])
                <= 1e-12
            )
        for ind in before[country].indicator_scores:
            assert (
                abs(
                    before[country].indicator_scores[ind].normalized
                    - after[country].indicator_scores[ind].normalized
                )
                <= 1e-12
            )
