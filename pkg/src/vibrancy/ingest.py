"""Loading, validation, and coverage statistics for dataset bundles.

A bundle directory contains:

* ``metadata.yaml``: pillars, indicators, sub-indices, countries,
  default weights, inclusion overrides (``format_version: 1``).
* ``observations.csv``: header ``country,year,indicator,value``; an empty
  value field means missing; ``#`` lines are comments.
* ``population.csv``: header ``country,year,population``.
* ``model_production.csv`` (optional): header
  ``country,year,academia_only,industry_only,total``; rows become the
  ``academia_industry_concentration`` indicator.
* ``talent_concentration.csv`` (optional): header
  ``country,year,female,male``; rows become ``ai_talent_gender_equality``.

CSV files use UTF-8 and ``.`` as the decimal separator. Loaders raise
DataError subclasses naming the offending row or key; they never return a
partially loaded table.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional

import yaml

from .core import (
    IndexMetadata,
    IndicatorDefinition,
    ObservationTable,
    PillarDefinition,
    PopulationTable,
    ScaleMode,
    SubIndexDefinition,
    WeightConfig,
)
from .derived import (
    ModelProductionCounts,
    TalentConcentrationPair,
    concentration_entries,
    gender_equality_entries,
)
from .errors import (
    DuplicateKey,
    ParseError,
    SchemaError,
    UnknownCountry,
    UnknownIndicator,
    ZeroWeightSum,
)

FORMAT_VERSION = 1

OBSERVATIONS_HEADER = ["country", "year", "indicator", "value"]
POPULATION_HEADER = ["country", "year", "population"]
MODEL_PRODUCTION_HEADER = ["country", "year", "academia_only", "industry_only", "total"]
TALENT_HEADER = ["country", "year", "female", "male"]


@dataclass(frozen=True)
class MetadataDocument:
    """Parsed metadata file: definitions plus bundle-level lists."""

    metadata: IndexMetadata
    default_weights: WeightConfig
    country_names: Mapping  # code -> display name, insertion-ordered
    inclusion_overrides: frozenset


@dataclass(frozen=True)
class DatasetBundle:
    observations: ObservationTable
    metadata: IndexMetadata
    default_weights: WeightConfig
    population: PopulationTable
    country_names: Mapping
    inclusion_overrides: frozenset

    @property
    def countries(self) -> tuple:
        return tuple(self.country_names)


@dataclass
class CoverageReport:
    by_country_year: dict  # (country, year) -> fraction in [0, 1]
    by_indicator_year: dict  # (indicator, year) -> fraction, or None when N/A
    countries: tuple
    years: tuple
    indicator_ids: tuple


@dataclass(frozen=True)
class InclusionWarning:
    country: str
    mean_coverage: float
    years: tuple
    severity: str  # "warning" (below threshold) or "caution" (kept by override)
    message: str


# ---------------------------------------------------------------------------
# CSV plumbing


def _text_lines(source):
    """Yield text from a path, bytes, or file-like object."""
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8", newline="")
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8"))
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return io.StringIO(data)
    raise TypeError(f"unsupported source type {type(source)!r}")


def _csv_rows(source, expected_header, source_name: str):
    """Parse CSV rows, skipping comments and blanks, checking the header.

    Yields (row_number, row) pairs for data rows.
    """
    handle = _text_lines(source)
    try:
        reader = csv.reader(handle)
        header = None
        for row in reader:
            if not row or not any(cell.strip() for cell in row):
                continue
            if row[0].lstrip().startswith("#"):
                continue
            stripped = [cell.strip() for cell in row]
            if header is None:
                header = stripped
                if header != expected_header:
                    raise ParseError(
                        f"expected header {','.join(expected_header)!r}, got {','.join(header)!r}",
                        source=source_name,
                        row=reader.line_num,
                    )
                continue
            if len(stripped) != len(expected_header):
                raise ParseError(
                    f"expected {len(expected_header)} fields, got {len(stripped)}",
                    source=source_name,
                    row=reader.line_num,
                )
            yield reader.line_num, stripped
        if header is None:
            raise ParseError("missing header row", source=source_name)
    finally:
        handle.close()


def _parse_year(text: str, source_name: str, row: int) -> int:
    if not (text.isdigit() and len(text) == 4):
        raise ParseError(f"year must be a 4-digit integer, got {text!r}", source=source_name, row=row)
    return int(text)


def _parse_float(text: str, field_name: str, source_name: str, row: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(
            f"{field_name} must be numeric, got {text!r}", source=source_name, row=row
        ) from None
    if not math.isfinite(value):
        raise ParseError(f"{field_name} must be finite, got {text!r}", source=source_name, row=row)
    return value


# ---------------------------------------------------------------------------
# Loaders


def load_observations(
    source,
    metadata: Optional[IndexMetadata] = None,
    source_name: str = "observations.csv",
) -> ObservationTable:
    """Load the long-format observation CSV.

    Rows with an empty value field are skipped (that cell is missing).
    When metadata is given, indicator ids are checked against it.
    """
    entries = {}
    for line_num, row in _csv_rows(source, OBSERVATIONS_HEADER, source_name):
        country, year_text, indicator, value_text = row
        if not country:
            raise ParseError("empty country field", source=source_name, row=line_num)
        if not indicator:
            raise ParseError("empty indicator field", source=source_name, row=line_num)
        year = _parse_year(year_text, source_name, line_num)
        if metadata is not None and not metadata.has_indicator(indicator):
            raise UnknownIndicator(indicator, source=source_name)
        if not value_text:
            continue
        key = (country, year, indicator)
        if key in entries:
            raise DuplicateKey(key, source=source_name)
        entries[key] = _parse_float(value_text, "value", source_name, line_num)
    return ObservationTable(entries)


def dump_observations(table: ObservationTable, handle) -> None:
    """Write a table back to CSV; load_observations inverts this exactly."""
    handle.write(f"# format_version: {FORMAT_VERSION}\n")
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(OBSERVATIONS_HEADER)
    for (country, year, indicator) in sorted(table.entries):
        value = table.entries[(country, year, indicator)]
        writer.writerow([country, year, indicator, repr(value)])


def load_population(source, source_name: str = "population.csv") -> PopulationTable:
    entries = {}
    for line_num, row in _csv_rows(source, POPULATION_HEADER, source_name):
        country, year_text, pop_text = row
        year = _parse_year(year_text, source_name, line_num)
        population = _parse_float(pop_text, "population", source_name, line_num)
        if population <= 0:
            raise ParseError(
                f"population must be positive, got {pop_text!r}", source=source_name, row=line_num
            )
        key = (country, year)
        if key in entries:
            raise DuplicateKey(key, source=source_name)
        entries[key] = population
    return PopulationTable(entries)


def load_model_production(source, source_name: str = "model_production.csv") -> list:
    records = []
    seen = set()
    for line_num, row in _csv_rows(source, MODEL_PRODUCTION_HEADER, source_name):
        country, year_text, academia_text, industry_text, total_text = row
        year = _parse_year(year_text, source_name, line_num)
        if (country, year) in seen:
            raise DuplicateKey((country, year), source=source_name)
        seen.add((country, year))
        try:
            counts = ModelProductionCounts(
                country=country,
                year=year,
                academia_only=int(academia_text),
                industry_only=int(industry_text),
                total=int(total_text),
            )
        except ValueError as exc:
            raise ParseError(str(exc), source=source_name, row=line_num) from None
        records.append(counts)
    return records


def load_talent_concentration(source, source_name: str = "talent_concentration.csv") -> list:
    records = []
    seen = set()
    for line_num, row in _csv_rows(source, TALENT_HEADER, source_name):
        country, year_text, female_text, male_text = row
        year = _parse_year(year_text, source_name, line_num)
        if (country, year) in seen:
            raise DuplicateKey((country, year), source=source_name)
        seen.add((country, year))
        try:
            pair = TalentConcentrationPair(
                country=country,
                year=year,
                female=_parse_float(female_text, "female", source_name, line_num),
                male=_parse_float(male_text, "male", source_name, line_num),
            )
        except ValueError as exc:
            raise ParseError(str(exc), source=source_name, row=line_num) from None
        records.append(pair)
    return records


def load_metadata(source) -> MetadataDocument:
    """Parse the YAML metadata file into validated definitions."""
    handle = _text_lines(source)
    try:
        document = yaml.safe_load(handle)
    except yaml.YAMLError as exc:
        raise SchemaError(f"metadata is not valid YAML: {exc}") from None
    finally:
        handle.close()
    if not isinstance(document, dict):
        raise SchemaError("metadata root must be a mapping")
    if document.get("format_version") != FORMAT_VERSION:
        raise SchemaError(
            f"unsupported format_version {document.get('format_version')!r}, expected {FORMAT_VERSION}"
        )

    def section(name, required=True):
        value = document.get(name)
        if value is None:
            if required:
                raise SchemaError(f"missing section {name!r}")
            return []
        if not isinstance(value, list):
            raise SchemaError(f"section {name!r} must be a list")
        return value

    def str_field(item, key, context):
        value = item.get(key)
        if not isinstance(value, str) or not value:
            raise SchemaError(f"{context}: field {key!r} must be a nonempty string")
        return value

    def num_field(item, key, context):
        value = item.get(key)
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SchemaError(f"{context}: field {key!r} must be a number")
        return float(value)

    pillars = []
    for item in section("pillars"):
        context = f"pillar {item.get('id')!r}"
        pillars.append(
            PillarDefinition(
                id=str_field(item, "id", context),
                display_name=str_field(item, "name", context),
                default_weight=num_field(item, "default_weight", context),
            )
        )

    sub_index_names = {}
    for item in section("sub_indices", required=False):
        context = f"sub-index {item.get('id')!r}"
        sub_id = str_field(item, "id", context)
        if sub_id in sub_index_names:
            raise SchemaError(f"duplicate sub-index id {sub_id!r}")
        sub_index_names[sub_id] = str_field(item, "name", context)

    indicators = []
    for item in section("indicators"):
        context = f"indicator {item.get('id')!r}"
        mode_text = str_field(item, "scale_mode", context)
        try:
            mode = ScaleMode(mode_text)
        except ValueError:
            raise SchemaError(
                f"{context}: scale_mode must be 'absolute' or 'rate', got {mode_text!r}"
            ) from None
        tags = item.get("sub_indices") or []
        if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
            raise SchemaError(f"{context}: sub_indices must be a list of ids")
        for tag in tags:
            if tag not in sub_index_names:
                raise SchemaError(f"{context}: unknown sub-index {tag!r}")
        indicators.append(
            IndicatorDefinition(
                id=str_field(item, "id", context),
                display_name=str_field(item, "name", context),
                pillar_id=str_field(item, "pillar", context),
                default_weight=num_field(item, "default_weight", context),
                scale_mode=mode,
                sub_indices=frozenset(tags),
                source=str(item.get("source") or ""),
            )
        )

    sub_indices = []
    for sub_id, name in sub_index_names.items():
        members = tuple(i.id for i in indicators if sub_id in i.sub_indices)
        if not members:
            raise SchemaError(f"sub-index {sub_id!r} has no member indicators")
        sub_indices.append(SubIndexDefinition(id=sub_id, display_name=name, indicator_ids=members))

    metadata = IndexMetadata(pillars, indicators, sub_indices)

    country_names = {}
    for item in section("countries"):
        context = f"country {item.get('code')!r}"
        code = str_field(item, "code", context)
        if code in country_names:
            raise SchemaError(f"duplicate country code {code!r}")
        country_names[code] = str_field(item, "name", context)

    overrides = document.get("inclusion_overrides") or []
    if not isinstance(overrides, list) or not all(isinstance(c, str) for c in overrides):
        raise SchemaError("inclusion_overrides must be a list of country codes")
    for code in overrides:
        if code not in country_names:
            raise SchemaError(f"inclusion override {code!r} is not a listed country")

    defaults = metadata.default_weights()
    # A metadata file whose defaults cannot produce any score is rejected
    # outright rather than failing on first use.
    for pillar in metadata.pillars:
        members = metadata.indicators_for_pillar(pillar.id)
        if members and sum(defaults.indicator_weights[i] for i in members) <= 0:
            raise SchemaError(f"default indicator weights for pillar {pillar.id!r} sum to zero")
    if sum(defaults.pillar_weights.values()) <= 0:
        raise SchemaError("default pillar weights sum to zero")

    return MetadataDocument(
        metadata=metadata,
        default_weights=defaults,
        country_names=country_names,
        inclusion_overrides=frozenset(overrides),
    )


def load_bundle(data_dir) -> DatasetBundle:
    """Load a complete dataset directory into an immutable bundle."""
    directory = Path(data_dir)
    doc = load_metadata(directory / "metadata.yaml")
    metadata = doc.metadata

    observations = load_observations(directory / "observations.csv", metadata=metadata)
    population = load_population(directory / "population.csv")

    derived_entries = {}
    production_path = directory / "model_production.csv"
    if production_path.exists():
        derived_entries.update(concentration_entries(load_model_production(production_path)))
    talent_path = directory / "talent_concentration.csv"
    if talent_path.exists():
        derived_entries.update(gender_equality_entries(load_talent_concentration(talent_path)))
    if derived_entries:
        observations = observations.merged(derived_entries)

    for country, year, indicator in observations.entries:
        if country not in doc.country_names:
            raise UnknownCountry(country, source=str(directory))
        if not metadata.has_indicator(indicator):
            raise UnknownIndicator(indicator, source=str(directory))

    # Register every listed country so ones with no data still participate.
    observations = ObservationTable(
        observations.entries, countries=doc.country_names, years=observations.years
    )

    return DatasetBundle(
        observations=observations,
        metadata=metadata,
        default_weights=doc.default_weights,
        population=population,
        country_names=doc.country_names,
        inclusion_overrides=doc.inclusion_overrides,
    )


# ---------------------------------------------------------------------------
# Coverage


def weight_shares(weights: WeightConfig, metadata: IndexMetadata) -> dict:
    """Percentage shares per level: pillar within index, indicator within pillar."""
    pillar_total = math.fsum(
        weights.pillar_weights.get(p.id, p.default_weight) for p in metadata.pillars
    )
    if pillar_total <= 0:
        raise ZeroWeightSum("pillar weights")
    shares = {"pillars": {}, "indicators": {}}
    for pillar in metadata.pillars:
        w = weights.pillar_weights.get(pillar.id, pillar.default_weight)
        shares["pillars"][pillar.id] = w / pillar_total * 100.0
    for pillar in metadata.pillars:
        members = metadata.indicators_for_pillar(pillar.id)
        if not members:
            continue
        member_total = math.fsum(
            weights.indicator_weights.get(i, metadata.indicator(i).default_weight)
            for i in members
        )
        if member_total <= 0:
            raise ZeroWeightSum(f"pillar {pillar.id!r}")
        for ind_id in members:
            w = weights.indicator_weights.get(ind_id, metadata.indicator(ind_id).default_weight)
            shares["indicators"][ind_id] = w / member_total * 100.0
    return shares


def compute_coverage(observations: ObservationTable, metadata: IndexMetadata) -> CoverageReport:
    """Data-presence fractions by country-year and by indicator-year.

    An indicator is applicable in a year when at least one country has a
    value for it; inapplicable indicator-years are reported as None and do
    not count against any country's denominator.
    """
    countries = observations.countries
    years = observations.years
    indicator_ids = tuple(i.id for i in metadata.indicators)

    by_country_year = {}
    by_indicator_year = {}
    for year in years:
        applicable = []
        present = {}
        for ind in indicator_ids:
            values = observations.year_slice(year, ind)
            present[ind] = values
            if values:
                applicable.append(ind)
                by_indicator_year[(ind, year)] = len(values) / len(countries)
            else:
                by_indicator_year[(ind, year)] = None
        for country in countries:
            if applicable:
                have = sum(1 for ind in applicable if country in present[ind])
                by_country_year[(country, year)] = have / len(applicable)
            else:
                by_country_year[(country, year)] = 0.0
    return CoverageReport(
        by_country_year=by_country_year,
        by_indicator_year=by_indicator_year,
        countries=countries,
        years=years,
        indicator_ids=indicator_ids,
    )


def validate_inclusion(
    coverage: CoverageReport,
    threshold: float = 0.70,
    window: int = 3,
    overrides: Iterable[str] = (),
) -> list:
    """Advisory inclusion check against mean coverage over recent years.

    Countries whose mean coverage over the last min(window, available)
    years falls below the threshold get a warning; countries on the
    override list get a caution note instead and stay included. The
    threshold is inclusive, with a 1e-9 slack so a mean that is exactly
    70% up to float rounding still passes.
    """
    overrides = frozenset(overrides)
    if not coverage.years:
        return []
    recent = coverage.years[-min(window, len(coverage.years)):]
    notes = []
    for country in coverage.countries:
        fractions = [coverage.by_country_year[(country, year)] for year in recent]
        mean = math.fsum(fractions) / len(fractions)
        if mean >= threshold - 1e-9:
            continue
        span = f"{recent[0]}-{recent[-1]}" if len(recent) > 1 else str(recent[0])
        if country in overrides:
            notes.append(
                InclusionWarning(
                    country=country,
                    mean_coverage=mean,
                    years=tuple(recent),
                    severity="caution",
                    message=(
                        f"{country}: mean coverage {mean:.1%} over {span} is below the "
                        f"{threshold:.0%} threshold; kept by override, interpret with caution"
                    ),
                )
            )
        else:
            notes.append(
                InclusionWarning(
                    country=country,
                    mean_coverage=mean,
                    years=tuple(recent),
                    severity="warning",
                    message=(
                        f"{country}: mean coverage {mean:.1%} over {span} is below the "
                        f"{threshold:.0%} inclusion threshold"
                    ),
                )
            )
    return notes
