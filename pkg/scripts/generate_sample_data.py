"""Regenerate the bundled synthetic sample dataset.

Writes observations.csv, population.csv, model_production.csv, and
talent_concentration.csv into src/vibrancy/data/. The output is fully
deterministic (fixed seed) and committed, so running this script is only
needed when changing the generator itself.

The numbers are synthetic but structured: a per-country strength profile
drives magnitudes so rankings look plausible, values grow year over year,
roughly 12% of cells are missing at random, and two structural gaps are
built in (no social-media indicators before 2020, no semiconductor export
figures for 2023) so whole-indicator exclusion shows up in real use.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

import yaml

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "vibrancy" / "data"
YEARS = range(2017, 2024)
SEED = 20240917
MISSING_RATE = 0.12

# Sparse-data countries: the override-listed six end up below the coverage
# threshold (caution notes), ZAF ends up below without an override (warning).
EXTRA_MISSING = {
    "EST": 0.22, "MEX": 0.28, "MYS": 0.25, "RUS": 0.30,
    "SAU": 0.35, "TUR": 0.30, "ZAF": 0.28,
}

# Relative overall strength; drives both magnitudes and rate-mode levels.
STRENGTH = {
    "USA": 100.0, "CHN": 62.0, "GBR": 27.0, "IND": 22.0, "DEU": 18.0,
    "CAN": 16.0, "FRA": 15.0, "KOR": 14.0, "JPN": 13.0, "SGP": 12.0,
    "ISR": 11.0, "CHE": 9.0, "NLD": 8.0, "AUS": 8.0, "SWE": 6.5,
    "ESP": 6.0, "ITA": 5.5, "FIN": 5.0, "DNK": 5.0, "IRL": 4.5,
    "NOR": 4.0, "BEL": 4.0, "AUT": 3.5, "POL": 3.5, "ARE": 3.5,
    "BRA": 3.0, "PRT": 2.5, "NZL": 2.5, "LUX": 2.0, "EST": 1.8,
    "RUS": 1.6, "TUR": 1.5, "MEX": 1.3, "MYS": 1.2, "SAU": 1.1,
    "ZAF": 1.0,
}

# Mid-2020 population in millions; grown ~0.7%/year from 2017.
POPULATION_M = {
    "USA": 331.5, "CHN": 1411.1, "GBR": 67.1, "IND": 1396.4, "DEU": 83.2,
    "CAN": 38.0, "FRA": 67.6, "KOR": 51.8, "JPN": 126.2, "SGP": 5.7,
    "ISR": 9.2, "CHE": 8.6, "NLD": 17.4, "AUS": 25.7, "SWE": 10.4,
    "ESP": 47.4, "ITA": 59.6, "FIN": 5.5, "DNK": 5.8, "IRL": 5.0,
    "NOR": 5.4, "BEL": 11.5, "AUT": 8.9, "POL": 38.0, "ARE": 9.3,
    "BRA": 213.2, "PRT": 10.3, "NZL": 5.1, "LUX": 0.63, "EST": 1.33,
    "RUS": 144.1, "TUR": 84.1, "MEX": 126.0, "MYS": 32.4, "SAU": 35.0,
    "ZAF": 59.3,
}

# Typical top-country magnitude and annual growth per absolute indicator.
ABSOLUTE_SCALES = {
    "ai_journal_publications": (60000, 1.08),
    "ai_journal_citations": (900000, 1.12),
    "ai_conference_publications": (14000, 1.07),
    "ai_conference_citations": (400000, 1.13),
    "ai_patent_grants": (9000, 1.15),
    "notable_ml_models": (60, 1.10),
    "foundation_models": (80, 1.35),
    "foundation_models_datasets": (30, 1.25),
    "foundation_models_applications": (40, 1.30),
    "open_access_foundation_models": (35, 1.30),
    "ai_github_projects": (300000, 1.18),
    "ai_github_projects_stars": (3000000, 1.20),
    "facct_submissions_rai": (120, 1.22),
    "neurips_submissions_rai": (300, 1.25),
    "icml_submissions_rai": (220, 1.24),
    "iclr_submissions_rai": (200, 1.26),
    "aies_submissions_rai": (90, 1.15),
    "aaai_submissions_rai": (160, 1.18),
    "total_ai_private_investment": (67000, 1.10),  # millions USD
    "total_ai_ma_investment": (20000, 1.08),
    "total_ai_minority_stake_investment": (4000, 1.09),
    "total_ai_public_offering_investment": (6000, 1.07),
    "newly_funded_ai_companies": (900, 1.05),
    "ai_study_programs_english": (500, 1.12),
    "ai_legislation_passed": (12, 1.20),
    "ai_mentions_legislative": (300, 1.25),
    "ai_social_media_posts": (2000000, 1.22),
    "semiconductor_exports": (120000, 1.06),  # millions USD
    "supercomputers": (170, 1.02),
    "compute_capacity_rmax": (900000, 1.25),  # teraflops
}

STRUCTURAL_GAPS = {
    # Social listening series starts in 2020.
    "social_media_share_of_voice_ai": lambda year: year < 2020,
    "ai_social_media_posts": lambda year: year < 2020,
    "ai_social_media_net_sentiment": lambda year: year < 2020,
    # Export figures lag; the 2023 trade data is not in yet.
    "semiconductor_exports": lambda year: year == 2023,
}


def strength_norm(country: str) -> float:
    return STRENGTH[country] / max(STRENGTH.values())


def absolute_value(rng, country, year, indicator) -> float:
    scale, growth = ABSOLUTE_SCALES[indicator]
    base = scale * strength_norm(country) ** 1.1
    noise = rng.lognormvariate(0, 0.35)
    value = base * (growth ** (year - YEARS.start)) * noise
    return round(max(value, 0.0), 3)


def rate_value(rng, country, year, indicator) -> float:
    s = strength_norm(country)
    if indicator == "ai_hiring_rate_yoy_ratio":
        return round(1.0 + 0.6 * s + rng.gauss(0, 0.08) + 0.02 * (year - YEARS.start), 4)
    if indicator == "relative_ai_skill_penetration":
        return round(max(0.1, 0.5 + 2.5 * s + rng.gauss(0, 0.15)), 4)
    if indicator == "ai_talent_concentration":
        return round(max(0.02, 0.3 + 1.6 * s + rng.gauss(0, 0.1) + 0.04 * (year - YEARS.start)), 4)
    if indicator == "ai_job_postings_pct":
        return round(max(0.05, 0.4 + 1.8 * s + rng.gauss(0, 0.12)), 4)
    if indicator == "net_migration_ai_skills":
        return round(rng.gauss(6.0 * s - 1.0, 1.2), 4)  # per 10k members; can be negative
    if indicator == "ai_study_programs_english_penetration":
        return round(max(0.01, 0.2 + 1.2 * s + rng.gauss(0, 0.08)), 4)
    if indicator == "social_media_share_of_voice_ai":
        return round(min(9.0, max(0.1, 1.0 + 4.0 * s + rng.gauss(0, 0.4) + 0.3 * (year - 2020))), 4)
    if indicator == "ai_social_media_net_sentiment":
        return round(rng.gauss(0.12 + 0.1 * s, 0.08), 4)  # can be negative
    if indicator == "internet_speed":
        return round(max(10.0, 40 + 140 * s + rng.gauss(0, 12) + 6 * (year - YEARS.start)), 2)
    raise ValueError(f"no generator for rate indicator {indicator!r}")


def main() -> None:
    rng = random.Random(SEED)
    with open(DATA_DIR / "metadata.yaml", encoding="utf-8") as handle:
        meta = yaml.safe_load(handle)
    derived_ids = {"academia_industry_concentration", "ai_talent_gender_equality"}
    indicators = [item for item in meta["indicators"] if item["id"] not in derived_ids]
    countries = sorted(c["code"] for c in meta["countries"])

    # Strategy adoption year: strong countries adopt early.
    adoption = {
        c: YEARS.start + max(0, min(6, int(rng.gauss(4 - 4 * strength_norm(c), 1.2))))
        for c in countries
    }

    rows = []
    for country in countries:
        for year in YEARS:
            for item in indicators:
                ind = item["id"]
                gap = STRUCTURAL_GAPS.get(ind)
                if gap is not None and gap(year):
                    continue
                if ind == "national_ai_strategy":
                    rows.append((country, year, ind, 1.0 if year >= adoption[country] else 0.0))
                    continue
                if rng.random() < MISSING_RATE + EXTRA_MISSING.get(country, 0.0):
                    continue
                if item["scale_mode"] == "absolute":
                    value = absolute_value(rng, country, year, ind)
                else:
                    value = rate_value(rng, country, year, ind)
                rows.append((country, year, ind, value))

    with open(DATA_DIR / "observations.csv", "w", encoding="utf-8", newline="") as handle:
        handle.write("# format_version: 1\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["country", "year", "indicator", "value"])
        for country, year, ind, value in rows:
            writer.writerow([country, year, ind, value])

    with open(DATA_DIR / "population.csv", "w", encoding="utf-8", newline="") as handle:
        handle.write("# format_version: 1\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["country", "year", "population"])
        for country in countries:
            for year in YEARS:
                grown = POPULATION_M[country] * (1.007 ** (year - 2020))
                writer.writerow([country, year, int(grown * 1_000_000)])

    with open(DATA_DIR / "model_production.csv", "w", encoding="utf-8", newline="") as handle:
        handle.write("# format_version: 1\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["country", "year", "academia_only", "industry_only", "total"])
        for country in countries:
            for year in YEARS:
                expected = 40 * strength_norm(country) * (1.1 ** (year - YEARS.start))
                total = int(rng.gauss(expected, expected * 0.2)) if expected > 2 else rng.randint(0, 3)
                total = max(0, total)
                academia = int(total * rng.uniform(0.15, 0.45))
                industry = int((total - academia) * rng.uniform(0.4, 0.9))
                writer.writerow([country, year, academia, industry, total])

    with open(DATA_DIR / "talent_concentration.csv", "w", encoding="utf-8", newline="") as handle:
        handle.write("# format_version: 1\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["country", "year", "female", "male"])
        for country in countries:
            for year in YEARS:
                if rng.random() < 0.05:
                    writer.writerow([country, year, 0.0, 0.0])  # no signal: missing
                    continue
                male = max(0.001, 0.004 + 0.02 * strength_norm(country) + rng.gauss(0, 0.002))
                ratio = min(1.0, max(0.2, rng.gauss(0.62, 0.12)))
                writer.writerow([country, year, round(male * ratio, 5), round(male, 5)])

    print(f"wrote sample dataset under {DATA_DIR}")


if __name__ == "__main__":
    main()
