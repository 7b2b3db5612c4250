"""Derived indicators computed from lower-level counts.

Two indicators in the default metadata are not observed directly but
computed here from auxiliary inputs:

* ``academia_industry_concentration``: an inverted Herfindahl-Hirschman
  index over the shares of notable models produced only by academia and
  only by industry. Higher means a more diverse (less concentrated) mix.
* ``ai_talent_gender_equality``: ratio of the smaller to the larger of
  female and male AI talent concentrations; 1 means parity.

Both functions signal degenerate inputs with an exception; callers record
the indicator as missing for that country-year and let median imputation
take over.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BothZero, ZeroTotal

CONCENTRATION_ID = "academia_industry_concentration"
GENDER_EQUALITY_ID = "ai_talent_gender_equality"


@dataclass(frozen=True)
class ModelProductionCounts:
    country: str
    year: int
    academia_only: int
    industry_only: int
    total: int  # all notable models, collaborations included

    def __post_init__(self):
        if min(self.academia_only, self.industry_only, self.total) < 0:
            raise ValueError("model counts must be nonnegative")
        if self.total < self.academia_only + self.industry_only:
            raise ValueError(
                "total must cover the academia-only and industry-only counts"
            )


@dataclass(frozen=True)
class TalentConcentrationPair:
    country: str
    year: int
    female: float
    male: float

    def __post_init__(self):
        if self.female < 0 or self.male < 0:
            raise ValueError("talent concentrations must be nonnegative")


def inverted_hhi(counts: ModelProductionCounts) -> float:
    """1 - (a^2 + i^2) over shares of all notable models.

    The denominator includes collaborations, so a + i <= 1 and joint
    academia/industry work raises the score.
    """
    if counts.total == 0:
        raise ZeroTotal(
            f"no notable models for {counts.country} in {counts.year}"
        )
    academia = counts.academia_only / counts.total
    industry = counts.industry_only / counts.total
    return 1.0 - (academia * academia + industry * industry)


def gender_equality_index(pair: TalentConcentrationPair) -> float:
    """min/max of the two talent concentrations, in [0, 1]."""
    top = max(pair.female, pair.male)
    if top == 0:
        raise BothZero(
            f"both talent concentrations are zero for {pair.country} in {pair.year}"
        )
    return min(pair.female, pair.male) / top


def concentration_entries(counts_list) -> dict:
    """ObservationTable entries for the concentration indicator.

    Country-years with zero total are skipped (missing), matching how the
    pipeline treats unobservable values.
    """
    entries = {}
    for counts in counts_list:
        if counts.total == 0:
            continue
        entries[(counts.country, counts.year, CONCENTRATION_ID)] = inverted_hhi(counts)
    return entries


def gender_equality_entries(pairs) -> dict:
    """ObservationTable entries for the gender-equality indicator."""
    entries = {}
    for pair in pairs:
        if max(pair.female, pair.male) == 0:
            continue
        entries[(pair.country, pair.year, GENDER_EQUALITY_ID)] = gender_equality_index(pair)
    return entries
