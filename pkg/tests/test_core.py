"""Unit tests for the scoring pipeline's individual steps."""

import math

import pytest

from helpers import build_metadata, pillars_struct
from oracle import score_year

from vibrancy.core import (
    IndexMetadata,
    IndicatorDefinition,
    ObservationTable,
    PillarDefinition,
    PopulationTable,
    ScaleMode,
    SubIndexDefinition,
    WeightConfig,
    compute_scores,
    compute_sub_index,
    impute_year,
    normalize_table,
    normalize_year,
    per_capita_transform,
    pillar_score,
    vibrancy_index,
)
from vibrancy.errors import (
    DuplicateKey,
    EmptySlice,
    MissingPopulation,
    UnknownSubIndex,
    UnknownYear,
    WeightOutOfRange,
    ZeroWeightSum,
)


def table_of(values_by_country, year=2020, indicator="v"):
    return ObservationTable(
        {(c, year, indicator): v for c, v in values_by_country.items()}
    )


class TestNormalizeYear:
    def test_three_point_slice(self):
        table = table_of({"A": 2, "B": 4, "C": 10})
        assert normalize_year(table, 2020, "v") == {"A": 0.0, "B": 25.0, "C": 100.0}

    def test_single_value_maps_to_midpoint(self):
        assert normalize_year(table_of({"A": 7}), 2020, "v") == {"A": 50.0}

    def test_no_spread_maps_to_midpoint(self):
        assert normalize_year(table_of({"A": 5, "B": 5}), 2020, "v") == {"A": 50.0, "B": 50.0}

    def test_extremes_hit_bounds(self):
        scores = normalize_year(table_of({"A": -3, "B": 1, "C": 12}), 2020, "v")
        assert scores["A"] == 0.0
        assert scores["C"] == 100.0

    def test_missing_countries_absent(self):
        table = table_of({"A": 1, "B": 2})
        scores = normalize_year(table, 2020, "v", countries={"A", "B", "C"})
        assert "C" not in scores

    def test_empty_slice_raises(self):
        with pytest.raises(EmptySlice):
            normalize_year(table_of({"A": 1}), 2020, "other")


class TestImputeYear:
    def test_odd_count_median(self):
        table = table_of({"A": 1, "B": 3, "D": 7})
        completed, imputed, excluded = impute_year(table, 2020, ["v"], ["A", "B", "C", "D"])
        assert completed["v"]["C"] == 3
        assert ("v", "C") in imputed
        assert not excluded

    def test_even_count_takes_mean_of_central_pair(self):
        table = table_of({"A": 1, "B": 3, "C": 7, "D": 9})
        completed, imputed, _ = impute_year(table, 2020, ["v"], ["A", "B", "C", "D", "E"])
        assert completed["v"]["E"] == 5
        assert imputed == {("v", "E")}

    def test_all_missing_indicator_is_excluded(self):
        table = table_of({"A": 1})
        completed, imputed, excluded = impute_year(table, 2020, ["v", "w"], ["A", "B"])
        assert excluded == frozenset({"w"})
        assert "w" not in completed

    def test_observed_values_never_flagged(self):
        table = table_of({"A": 1, "B": 2})
        _, imputed, _ = impute_year(table, 2020, ["v"], ["A", "B"])
        assert imputed == set()


class TestPillarScore:
    def test_weighted_pair(self):
        assert pillar_score({"a": 100.0, "b": 0.0}, {"a": 8, "b": 2}) == 80.0

    def test_single_indicator_identity(self):
        assert pillar_score({"a": 42.0}, {"a": 5}) == 42.0

    def test_equal_weights_mean(self):
        assert pillar_score({"a": 30.0, "b": 60.0, "c": 90.0}, {"a": 1, "b": 1, "c": 1}) == 60.0

    def test_zero_weight_sum(self):
        with pytest.raises(ZeroWeightSum):
            pillar_score({"a": 10.0}, {"a": 0})

    def test_negative_weight_rejected(self):
        with pytest.raises(WeightOutOfRange):
            pillar_score({"a": 10.0}, {"a": -1})


class TestVibrancyIndex:
    def test_constant_scores(self):
        weights = dict(zip("abcdefgh", (10, 2, 8, 2, 1, 4, 2, 6)))
        scores = {p: 100.0 for p in weights}
        assert vibrancy_index(scores, weights) == pytest.approx(100.0)

    def test_weighted_pair(self):
        assert vibrancy_index({"x": 70.0, "y": 35.0}, {"x": 10, "y": 2}) == pytest.approx(
            770.0 / 12.0
        )

    def test_common_factor_cancels(self):
        scores = {"x": 61.7, "y": 12.9, "z": 88.25}
        base = vibrancy_index(scores, {"x": 3, "y": 1, "z": 2})
        scaled = vibrancy_index(scores, {"x": 9, "y": 3, "z": 6})
        assert abs(base - scaled) <= 1e-12

    def test_zero_weight_sum(self):
        with pytest.raises(ZeroWeightSum):
            vibrancy_index({"x": 50.0}, {"x": 0})


class TestPerCapitaTransform:
    metadata = build_metadata([("p", 5, [("counts", 5), ("ratio", 5)])])

    def test_absolute_divided_per_million(self):
        metadata = IndexMetadata(
            [PillarDefinition("p", "P", 5)],
            [IndicatorDefinition("counts", "Counts", "p", 5, ScaleMode.ABSOLUTE)],
        )
        table = ObservationTable({("A", 2020, "counts"): 70.0})
        population = PopulationTable({("A", 2020): 7_000_000})
        out = per_capita_transform(table, metadata, population)
        assert out.get("A", 2020, "counts") == 10.0

    def test_rate_mode_passes_through(self):
        table = ObservationTable({("A", 2020, "ratio"): 1.3})
        population = PopulationTable({("A", 2020): 1})
        out = per_capita_transform(table, self.metadata, population)
        assert out.get("A", 2020, "ratio") == 1.3

    def test_missing_population_raises(self):
        metadata = IndexMetadata(
            [PillarDefinition("p", "P", 5)],
            [IndicatorDefinition("counts", "Counts", "p", 5, ScaleMode.ABSOLUTE)],
        )
        table = ObservationTable({("A", 2020, "counts"): 70.0})
        with pytest.raises(MissingPopulation):
            per_capita_transform(table, metadata, PopulationTable({}))


class TestObservationTable:
    def test_duplicate_key_rejected(self):
        with pytest.raises(DuplicateKey):
            ObservationTable([(("A", 2020, "v"), 1.0), (("A", 2020, "v"), 2.0)])

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            ObservationTable({("A", 2020, "v"): float("nan")})

    def test_registered_country_without_data_is_listed(self):
        table = ObservationTable({("A", 2020, "v"): 1.0}, countries=["A", "B"])
        assert table.countries == ("A", "B")

    def test_merged_detects_clash(self):
        table = ObservationTable({("A", 2020, "v"): 1.0})
        with pytest.raises(DuplicateKey):
            table.merged({("A", 2020, "v"): 2.0})


class TestWeightConfig:
    def test_out_of_range_rejected(self):
        with pytest.raises(WeightOutOfRange):
            WeightConfig({"a": 11}, {})
        with pytest.raises(WeightOutOfRange):
            WeightConfig({}, {"p": -0.5})

    def test_fractional_weights_accepted(self):
        config = WeightConfig({"a": 2.5}, {"p": 0.5})
        assert config.indicator_weights["a"] == 2.5

    def test_merged_overrides(self):
        base = WeightConfig({"a": 1, "b": 2}, {"p": 3})
        merged = base.merged({"b": 9}, {"p": 1})
        assert merged.indicator_weights == {"a": 1, "b": 9}
        assert merged.pillar_weights == {"p": 1}
        assert base.indicator_weights["b"] == 2

    def test_fingerprint_tracks_values(self):
        a = WeightConfig({"a": 1}, {"p": 3})
        b = WeightConfig({"a": 1}, {"p": 3})
        c = WeightConfig({"a": 2}, {"p": 3})
        assert a.fingerprint() == b.fingerprint()
        assert a.fingerprint() != c.fingerprint()
        assert len(a.fingerprint()) == 16


class TestComputeScores:
    def small_dataset(self):
        metadata = build_metadata(
            [
                ("growth", 10, [("pubs", 8), ("cites", 2)]),
                ("adoption", 2, [("speed", 5), ("posts", 5)]),
            ]
        )
        entries = {
            ("A", 2020, "pubs"): 10.0,
            ("B", 2020, "pubs"): 20.0,
            ("C", 2020, "pubs"): 40.0,
            ("A", 2020, "cites"): 5.0,
            ("B", 2020, "cites"): 1.0,
            ("A", 2020, "speed"): 100.0,
            ("B", 2020, "speed"): 50.0,
            ("C", 2020, "speed"): 75.0,
            ("A", 2020, "posts"): 3.0,
            ("C", 2020, "posts"): 9.0,
        }
        return ObservationTable(entries), metadata

    def test_matches_brute_force(self):
        table, metadata = self.small_dataset()
        cards = compute_scores(table, metadata, year=2020)
        pillar_ref, index_ref = score_year(
            dict(table.entries), list(table.countries), 2020, pillars_struct(metadata)
        )
        for card in cards:
            assert card.index_value == pytest.approx(index_ref[card.country], abs=1e-9)
            for pid, score in card.pillar_scores.items():
                assert score == pytest.approx(pillar_ref[(card.country, pid)], abs=1e-9)

    def test_cards_sorted_by_rank_then_country(self):
        table, metadata = self.small_dataset()
        cards = compute_scores(table, metadata, year=2020)
        assert [c.rank for c in cards] == sorted(c.rank for c in cards)
        values = [c.index_value for c in cards]
        assert values == sorted(values, reverse=True)

    def test_scorecard_invariants(self):
        table, metadata = self.small_dataset()
        for card in compute_scores(table, metadata, year=2020):
            assert 0.0 <= card.index_value <= 100.0
            assert min(card.pillar_scores.values()) - 1e-9 <= card.index_value
            assert card.index_value <= max(card.pillar_scores.values()) + 1e-9
            for ind_id, score in card.indicator_scores.items():
                assert 0.0 <= score.normalized <= 100.0
                assert score.imputed == (score.raw_value is None)

    def test_all_missing_indicator_equals_deleted_indicator(self):
        table, metadata = self.small_dataset()
        # "posts" missing everywhere in a second dataset
        entries = {k: v for k, v in table.entries.items() if k[2] != "posts"}
        sparse = ObservationTable(entries, countries=table.countries)
        with_missing = compute_scores(sparse, metadata, year=2020)
        without_indicator = compute_scores(
            sparse, metadata.without_indicator("posts"), year=2020
        )
        for a, b in zip(with_missing, without_indicator):
            assert a.country == b.country
            assert a.rank == b.rank
            assert abs(a.index_value - b.index_value) <= 1e-12
            for pid in a.pillar_scores:
                assert abs(a.pillar_scores[pid] - b.pillar_scores[pid]) <= 1e-12
        assert all("posts" not in c.indicator_scores for c in with_missing)

    def test_zeroed_pillar_equals_removed_pillar(self):
        table, metadata = self.small_dataset()
        weights = metadata.default_weights().merged({"speed": 0, "posts": 0})
        zeroed = compute_scores(table, metadata, weights=weights, year=2020)
        only_growth = build_metadata([("growth", 10, [("pubs", 8), ("cites", 2)])])
        trimmed_table = ObservationTable(
            {k: v for k, v in table.entries.items() if k[2] in ("pubs", "cites")},
            countries=table.countries,
        )
        removed = compute_scores(trimmed_table, only_growth, year=2020)
        for a, b in zip(zeroed, removed):
            assert a.country == b.country
            assert a.index_value == pytest.approx(b.index_value, abs=1e-12)
            assert "adoption" not in a.pillar_scores

    def test_unknown_year(self):
        table, metadata = self.small_dataset()
        with pytest.raises(UnknownYear):
            compute_scores(table, metadata, year=1999)

    def test_all_weights_zero_raises_zero_weight_sum(self):
        table, metadata = self.small_dataset()
        weights = WeightConfig(
            {"pubs": 0, "cites": 0, "speed": 0, "posts": 0}, {"growth": 10, "adoption": 2}
        )
        with pytest.raises(ZeroWeightSum):
            compute_scores(table, metadata, weights=weights, year=2020)

    def test_effective_weight_share_is_within_pillar(self):
        table, metadata = self.small_dataset()
        cards = compute_scores(table, metadata, year=2020)
        card = cards[0]
        assert card.indicator_scores["pubs"].effective_weight_share == pytest.approx(0.8)
        assert card.indicator_scores["speed"].effective_weight_share == pytest.approx(0.5)

    def test_default_weights_used_for_unspecified_ids(self):
        table, metadata = self.small_dataset()
        partial = WeightConfig({"pubs": 8}, {})
        full = compute_scores(table, metadata, weights=partial, year=2020)
        defaults = compute_scores(table, metadata, year=2020)
        for a, b in zip(full, defaults):
            assert a.index_value == b.index_value


class TestComputeSubIndex:
    def dataset(self):
        metadata = build_metadata(
            [
                ("growth", 10, [("pubs", 8), ("cites", 2)]),
                ("adoption", 2, [("speed", 5), ("posts", 5)]),
            ],
            sub_indices=[
                ("frontier", "Frontier", ["pubs", "speed"]),
                ("solo", "Solo", ["speed"]),
            ],
        )
        entries = {
            ("A", 2020, "pubs"): 10.0,
            ("B", 2020, "pubs"): 20.0,
            ("C", 2020, "pubs"): 40.0,
            ("A", 2020, "cites"): 5.0,
            ("B", 2020, "cites"): 1.0,
            ("C", 2020, "cites"): 3.0,
            ("A", 2020, "speed"): 100.0,
            ("B", 2020, "speed"): 50.0,
            ("C", 2020, "speed"): 75.0,
            ("A", 2020, "posts"): 3.0,
            ("C", 2020, "posts"): 9.0,
        }
        return ObservationTable(entries), metadata

    def test_two_level_aggregation_matches_oracle(self):
        table, metadata = self.dataset()
        cards = compute_sub_index(table, metadata, sub_index="frontier", year=2020)
        from oracle import sub_index_pillars

        struct = sub_index_pillars(pillars_struct(metadata), {"pubs", "speed"})
        pillar_ref, index_ref = score_year(dict(table.entries), list(table.countries), 2020, struct)
        for card in cards:
            assert card.index_value == pytest.approx(index_ref[card.country], abs=1e-9)

    def test_single_indicator_sub_index_is_identity(self):
        table, metadata = self.dataset()
        cards = compute_sub_index(table, metadata, sub_index="solo", year=2020)
        by_country = {c.country: c for c in cards}
        scores = normalize_year(table, 2020, "speed")
        for country, normalized in scores.items():
            assert by_country[country].index_value == pytest.approx(normalized, abs=1e-12)

    def test_zeroing_one_pillar_leaves_the_other(self):
        table, metadata = self.dataset()
        weights = metadata.default_weights().merged({"speed": 0})
        cards = compute_sub_index(table, metadata, weights=weights, sub_index="frontier", year=2020)
        trimmed = build_metadata(
            [
                ("growth", 10, [("pubs", 8), ("cites", 2)]),
                ("adoption", 2, [("speed", 5), ("posts", 5)]),
            ],
            sub_indices=[("frontier", "Frontier", ["pubs"])],
        )
        reference = compute_sub_index(table, trimmed, sub_index="frontier", year=2020)
        for a, b in zip(cards, reference):
            assert a.country == b.country
            assert a.index_value == pytest.approx(b.index_value, abs=1e-12)

    def test_unknown_sub_index(self):
        table, metadata = self.dataset()
        with pytest.raises(UnknownSubIndex):
            compute_sub_index(table, metadata, sub_index="No_such", year=2020)


class TestNormalizeTable:
    def test_flags_and_exclusions_recorded(self):
        metadata = build_metadata([("p", 5, [("v", 5), ("w", 5)])])
        table = ObservationTable(
            {("A", 2020, "v"): 1.0, ("B", 2020, "v"): 3.0},
            countries=["A", "B", "C"],
        )
        result = normalize_table(table, metadata)
        assert result.excluded_indicators[2020] == frozenset({"w"})
        assert ("C", 2020, "v") in result.imputed_flags
        assert ("A", 2020, "v") not in result.imputed_flags
        assert all(0.0 <= s <= 100.0 for s in result.entries.values())

    def test_unknown_year_rejected(self):
        metadata = build_metadata([("p", 5, [("v", 5)])])
        table = ObservationTable({("A", 2020, "v"): 1.0})
        with pytest.raises(UnknownYear):
            normalize_table(table, metadata, years=[1999])


def test_index_metadata_validation():
    with pytest.raises(Exception):
        IndexMetadata(
            [PillarDefinition("p", "P", 5)],
            [IndicatorDefinition("v", "V", "missing_pillar", 5, ScaleMode.RATE)],
        )
    with pytest.raises(WeightOutOfRange):
        IndexMetadata(
            [PillarDefinition("p", "P", 11)],
            [],
        )


def test_fsum_keeps_weighted_mean_exact_under_reordering():
    values = {f"i{k}": math.sin(k) * 50 + 50 for k in range(20)}
    weights = {f"i{k}": (k % 10) + 0.25 for k in range(20)}
    forward = pillar_score(values, weights)
    shuffled = pillar_score(dict(reversed(list(values.items()))), weights)
    assert forward == shuffled
