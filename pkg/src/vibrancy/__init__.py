"""Global AI vibrancy index engine.

Computes a composite country index from a panel of AI indicators:
per-year min-max normalization, median imputation of missing cells, and
two-level weighted aggregation into pillar scores and one index value,
plus rankings, thematic sub-indices, derived concentration/equality
metrics, and coverage statistics. Served through a CLI (``vibrancy``)
and an HTTP JSON API.
"""

from .core import (
    IndexMetadata,
    IndicatorDefinition,
    IndicatorScore,
    NormalizedTable,
    ObservationTable,
    PillarDefinition,
    PopulationTable,
    ScaleMode,
    ScoreCard,
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
from .derived import (
    ModelProductionCounts,
    TalentConcentrationPair,
    gender_equality_index,
    inverted_hhi,
)
from .ingest import (
    CoverageReport,
    DatasetBundle,
    compute_coverage,
    load_bundle,
    load_metadata,
    load_observations,
    load_population,
    validate_inclusion,
    weight_shares,
)
from .ranking import (
    RankingRow,
    RankingTable,
    RankTrajectory,
    rank_by_score,
    rank_trajectories,
)

__version__ = "0.1.0"
