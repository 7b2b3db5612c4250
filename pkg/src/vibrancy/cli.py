"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 data or computation error
(message names the offending file, row, or key), 4 weight configuration
that leaves nothing to aggregate. Diagnostics go to stderr; data goes to
stdout or the --output target.
"""

from __future__ import annotations

import json
from pathlib import Path

import click
import yaml

from . import payloads, service
from .core import WeightConfig, compute_scores, compute_sub_index, normalize_table, per_capita_transform
from .errors import (
    ComputationError,
    DataError,
    SchemaError,
    UnknownIndicator,
    UnknownPillar,
    UnknownYear,
    ZeroWeightSum,
)
from .ingest import DatasetBundle, compute_coverage, load_bundle, validate_inclusion
from .ranking import rank_trajectories


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    raise SystemExit(code)


def _guarded(action):
    """Run a command body, translating domain errors into exit codes."""
    try:
        return action()
    except ZeroWeightSum as exc:
        _fail(str(exc), 4)
    except (DataError, ComputationError) as exc:
        _fail(str(exc), 3)
    except OSError as exc:
        _fail(str(exc), 3)


def _load_bundle(data_dir) -> DatasetBundle:
    return load_bundle(service.resolve_data_dir(data_dir))


def _load_weights(bundle: DatasetBundle, weights_path) -> WeightConfig:
    if not weights_path:
        return bundle.default_weights
    with open(weights_path, encoding="utf-8") as handle:
        try:
            document = yaml.safe_load(handle)
        except yaml.YAMLError as exc:
            raise SchemaError(f"weights file is not valid YAML: {exc}") from None
    if not isinstance(document, dict):
        raise SchemaError("weights file root must be a mapping")
    indicator_overrides = document.get("indicator_weights") or {}
    pillar_overrides = document.get("pillar_weights") or {}
    pillar_ids = {p.id for p in bundle.metadata.pillars}
    for key in indicator_overrides:
        if not bundle.metadata.has_indicator(key):
            raise UnknownIndicator(key, source=str(weights_path))
    for key in pillar_overrides:
        if key not in pillar_ids:
            raise UnknownPillar(key)
    return bundle.default_weights.merged(indicator_overrides, pillar_overrides)


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _echo_inclusion_warnings(bundle: DatasetBundle) -> None:
    report = compute_coverage(bundle.observations, bundle.metadata)
    for note in validate_inclusion(report, overrides=bundle.inclusion_overrides):
        click.echo(f"{note.severity}: {note.message}", err=True)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _ranking_csv(payload) -> str:
    # Rows share one surviving-pillar set, already in declaration order.
    pillar_ids = list(payload["rows"][0]["pillar_scores"]) if payload["rows"] else []
    lines = ["rank,country,score," + ",".join(pillar_ids)]
    for row in payload["rows"]:
        cells = [str(row["rank"]), row["country"], repr(row["index_value"])]
        for pid in pillar_ids:
            score = row["pillar_scores"].get(pid)
            cells.append("" if score is None else repr(score))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _ranking_table(payload) -> str:
    width = max((len(r["country_name"]) for r in payload["rows"]), default=7)
    width = max(width, len("Country"))
    lines = [f"{'Rank':>4}  {'Code':<4}  {'Country':<{width}}  {'Score':>8}"]
    for row in payload["rows"]:
        lines.append(
            f"{row['rank']:>4}  {row['country']:<4}  {row['country_name']:<{width}}  "
            f"{row['index_value']:>8.2f}"
        )
    return "\n".join(lines) + "\n"


def _format_ranking(payload, fmt: str) -> str:
    if fmt == "json":
        return _json_text(payload)
    if fmt == "csv":
        return _ranking_csv(payload)
    return _ranking_table(payload)


def _year_range(bundle, from_year, to_year):
    years = bundle.observations.years
    lo = from_year if from_year is not None else years[0]
    hi = to_year if to_year is not None else years[-1]
    if lo > hi:
        raise click.UsageError("empty year range: --from exceeds --to")
    for bound in (lo, hi):
        if bound not in years:
            raise UnknownYear(bound)
    return [y for y in years if lo <= y <= hi]


data_dir_option = click.option(
    "--data-dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Dataset directory; defaults to $VIBRANCY_DATA_DIR, then the bundled sample.",
)
weights_option = click.option(
    "--weights",
    "weights_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="YAML/JSON file with partial indicator_weights / pillar_weights overrides.",
)
per_capita_option = click.option(
    "--per-capita", is_flag=True, help="Divide absolute-mode indicators by population."
)
output_option = click.option(
    "--output", type=click.Path(), default=None, help="Write to this path instead of stdout."
)


@click.group()
@click.version_option(package_name="vibrancy", prog_name="vibrancy")
def main():
    """Compute, rank, inspect, and serve the AI vibrancy index."""


@main.command()
@data_dir_option
@weights_option
@click.option("--year", type=int, required=True, help="Year to compute.")
@per_capita_option
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "table"]), default="json")
@output_option
def compute(data_dir, weights_path, year, per_capita, fmt, output):
    """Full score cards: index, pillar, and indicator scores per country."""

    def action():
        bundle = _load_bundle(data_dir)
        weights = _load_weights(bundle, weights_path)
        cards = compute_scores(
            bundle.observations,
            bundle.metadata,
            weights=weights,
            year=year,
            per_capita=per_capita,
            population=bundle.population,
        )
        payload = payloads.scorecards_payload(
            cards,
            bundle.metadata,
            weights,
            per_capita=per_capita,
            country_names=bundle.country_names,
        )
        _echo_inclusion_warnings(bundle)
        _emit(_format_ranking(payload, fmt), output)

    _guarded(action)


@main.command()
@data_dir_option
@weights_option
@click.option("--year", type=int, required=True, help="Year to rank.")
@per_capita_option
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "table"]), default="table")
@output_option
def rank(data_dir, weights_path, year, per_capita, fmt, output):
    """Annual country ranking by index value."""

    def action():
        bundle = _load_bundle(data_dir)
        weights = _load_weights(bundle, weights_path)
        cards = compute_scores(
            bundle.observations,
            bundle.metadata,
            weights=weights,
            year=year,
            per_capita=per_capita,
            population=bundle.population,
        )
        payload = payloads.ranking_payload(
            cards,
            bundle.metadata,
            weights,
            per_capita=per_capita,
            country_names=bundle.country_names,
        )
        _echo_inclusion_warnings(bundle)
        _emit(_format_ranking(payload, fmt), output)

    _guarded(action)


@main.command("sub-index")
@click.argument("sub_index_id")
@data_dir_option
@weights_option
@click.option("--year", type=int, required=True, help="Year to rank.")
@per_capita_option
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "table"]), default="table")
@output_option
def sub_index(sub_index_id, data_dir, weights_path, year, per_capita, fmt, output):
    """Ranking restricted to one thematic sub-index."""

    def action():
        bundle = _load_bundle(data_dir)
        weights = _load_weights(bundle, weights_path)
        cards = compute_sub_index(
            bundle.observations,
            bundle.metadata,
            weights=weights,
            sub_index=sub_index_id,
            year=year,
            per_capita=per_capita,
            population=bundle.population,
        )
        payload = payloads.ranking_payload(
            cards,
            bundle.metadata,
            weights,
            per_capita=per_capita,
            sub_index=sub_index_id,
            country_names=bundle.country_names,
        )
        _echo_inclusion_warnings(bundle)
        _emit(_format_ranking(payload, fmt), output)

    _guarded(action)


@main.command()
@data_dir_option
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "table"]), default="table")
@output_option
def coverage(data_dir, fmt, output):
    """Data coverage by country-year and by indicator-year."""

    def action():
        bundle = _load_bundle(data_dir)
        report = compute_coverage(bundle.observations, bundle.metadata)
        payload = payloads.coverage_payload(report)
        if fmt == "json":
            text = _json_text(payload)
        elif fmt == "csv":
            lines = ["scope,id,year,fraction"]
            for country in report.countries:
                for year in report.years:
                    lines.append(
                        f"country,{country},{year},{repr(report.by_country_year[(country, year)])}"
                    )
            for ind in report.indicator_ids:
                for year in report.years:
                    fraction = report.by_indicator_year[(ind, year)]
                    cell = "" if fraction is None else repr(fraction)
                    lines.append(f"indicator,{ind},{year},{cell}")
            text = "\n".join(lines) + "\n"
        else:
            header = "Country  " + "  ".join(f"{y:>5}" for y in report.years)
            lines = [header]
            for country in report.countries:
                cells = "  ".join(
                    f"{report.by_country_year[(country, y)] * 100:>4.0f}%" for y in report.years
                )
                lines.append(f"{country:<7}  {cells}")
            text = "\n".join(lines) + "\n"
        _emit(text, output)

    _guarded(action)


@main.command()
@data_dir_option
@click.option("--threshold", type=float, default=0.70, show_default=True,
              help="Mean-coverage inclusion threshold (fraction).")
@click.option("--window", type=int, default=3, show_default=True,
              help="Number of most recent years to average.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="table")
def validate(data_dir, threshold, window, fmt):
    """Advisory coverage check; warnings never fail the command."""

    def action():
        bundle = _load_bundle(data_dir)
        report = compute_coverage(bundle.observations, bundle.metadata)
        notes = validate_inclusion(
            report, threshold=threshold, window=window, overrides=bundle.inclusion_overrides
        )
        if fmt == "json":
            _emit(_json_text(payloads.warnings_payload(notes)), None)
        elif not notes:
            click.echo(f"all countries meet the {threshold:.0%} coverage threshold")
        else:
            for note in notes:
                click.echo(f"{note.severity}: {note.message}")

    _guarded(action)


@main.command()
@data_dir_option
@weights_option
@click.option("--year", type=int, default=None, help="Single year to export.")
@click.option("--from", "from_year", type=int, default=None, help="First year of the range.")
@click.option("--to", "to_year", type=int, default=None, help="Last year of the range.")
@per_capita_option
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--output", type=click.Path(), default=None,
              help="Directory for the CSV bundle, or file for --format json.")
def export(data_dir, weights_path, year, from_year, to_year, per_capita, fmt, output):
    """Write normalized scores, pillar scores, index values, and coverage."""
    if year is not None and (from_year is not None or to_year is not None):
        raise click.UsageError("use either --year or --from/--to, not both")
    if fmt == "csv" and not output:
        raise click.UsageError("--output directory is required for CSV export")

    def action():
        bundle = _load_bundle(data_dir)
        weights = _load_weights(bundle, weights_path)
        years = [year] if year is not None else None
        if years is not None and year not in bundle.observations.years:
            raise UnknownYear(year)
        if years is None:
            years = _year_range(bundle, from_year, to_year)

        table = bundle.observations
        if per_capita:
            table = per_capita_transform(table, bundle.metadata, bundle.population)
        normalized = normalize_table(table, bundle.metadata, years=years)

        cards_by_year = {
            y: compute_scores(
                bundle.observations,
                bundle.metadata,
                weights=weights,
                year=y,
                per_capita=per_capita,
                population=bundle.population,
            )
            for y in years
        }
        report = compute_coverage(bundle.observations, bundle.metadata)

        normalized_rows = [
            {
                "country": c,
                "year": y,
                "indicator": ind,
                "score": score,
                "imputed": (c, y, ind) in normalized.imputed_flags,
            }
            for (c, y, ind), score in sorted(normalized.entries.items())
        ]
        pillar_rows = [
            {"country": card.country, "year": y, "pillar": pid, "score": score}
            for y in years
            for card in cards_by_year[y]
            for pid, score in card.pillar_scores.items()
        ]
        index_rows = [
            {"country": card.country, "year": y, "score": card.index_value, "rank": card.rank}
            for y in years
            for card in cards_by_year[y]
        ]

        if fmt == "json":
            document = {
                "years": years,
                "per_capita": per_capita,
                "weight_fingerprint": weights.fingerprint(),
                "normalized": [
                    {**row, "score": payloads.r6(row["score"])} for row in normalized_rows
                ],
                "pillars": [
                    {**row, "score": payloads.r6(row["score"])} for row in pillar_rows
                ],
                "index": [
                    {**row, "score": payloads.r6(row["score"])} for row in index_rows
                ],
                "coverage": payloads.coverage_payload(report),
            }
            _emit(_json_text(document), output)
            return

        out_dir = Path(output)
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / "normalized.csv", "w", encoding="utf-8") as handle:
            handle.write("# format_version: 1\n")
            handle.write("country,year,indicator,value\n")
            for row in normalized_rows:
                handle.write(
                    f"{row['country']},{row['year']},{row['indicator']},{row['score']!r}\n"
                )
        with open(out_dir / "pillars.csv", "w", encoding="utf-8") as handle:
            handle.write("# format_version: 1\n")
            handle.write("country,year,pillar,score\n")
            for row in pillar_rows:
                handle.write(f"{row['country']},{row['year']},{row['pillar']},{row['score']!r}\n")
        with open(out_dir / "index.csv", "w", encoding="utf-8") as handle:
            handle.write("# format_version: 1\n")
            handle.write("country,year,score,rank\n")
            for row in index_rows:
                handle.write(f"{row['country']},{row['year']},{row['score']!r},{row['rank']}\n")
        with open(out_dir / "coverage.csv", "w", encoding="utf-8") as handle:
            handle.write("# format_version: 1\n")
            handle.write("scope,id,year,fraction\n")
            for country in report.countries:
                for y in report.years:
                    handle.write(
                        f"country,{country},{y},{report.by_country_year[(country, y)]!r}\n"
                    )
            for ind in report.indicator_ids:
                for y in report.years:
                    fraction = report.by_indicator_year[(ind, y)]
                    cell = "" if fraction is None else repr(fraction)
                    handle.write(f"indicator,{ind},{y},{cell}\n")
        click.echo(f"wrote normalized.csv, pillars.csv, index.csv, coverage.csv to {out_dir}", err=True)

    _guarded(action)


@main.command()
@data_dir_option
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=service.DEFAULT_PORT, show_default=True)
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None,
              help="Serve this static directory at / (a built web UI).")
def serve(data_dir, host, port, ui_dir):
    """Run the HTTP API server."""

    def action():
        service.run(data_dir=data_dir, host=host, port=port, ui_dir=ui_dir)

    _guarded(action)


if __name__ == "__main__":
    main()
