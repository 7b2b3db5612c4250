"""Read-only HTTP JSON API over a dataset bundle.

The bundle is loaded once at application startup and never mutated, so
any number of requests can run concurrently. Weight overrides arrive in
request bodies and stay request-local; identical requests produce
identical responses.

Error mapping: malformed parameters or out-of-range weights give 400,
unknown years/indicators/countries/sub-indices give 404, and weight
configurations that leave nothing to aggregate give 422.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import payloads
from .core import compute_scores, compute_sub_index
from .errors import (
    DataError,
    MissingPopulation,
    UnknownCountry,
    UnknownIndicator,
    UnknownPillar,
    UnknownSubIndex,
    UnknownYear,
    WeightOutOfRange,
    ZeroWeightSum,
)
from .ingest import DatasetBundle, compute_coverage, load_bundle
from .ranking import rank_trajectories

DEFAULT_PORT = 8080
DATA_DIR_ENV = "VIBRANCY_DATA_DIR"
BUNDLED_DATA_DIR = Path(__file__).resolve().parent / "data"


def resolve_data_dir(data_dir=None) -> Path:
    """Explicit flag, then the environment variable, then the bundled sample."""
    if data_dir:
        return Path(data_dir)
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    return BUNDLED_DATA_DIR


def _error_body(status: int, kind: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"type": kind, "message": message}})


def _parse_bool(value, name: str) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("true", "1", "yes"):
        return True
    if text in ("false", "0", "no", ""):
        return False
    raise RequestValidationError([{"loc": [name], "msg": f"{name} must be a boolean"}])


def create_app(
    bundle: Optional[DatasetBundle] = None,
    data_dir=None,
    ui_dir=None,
) -> FastAPI:
    if bundle is None:
        bundle = load_bundle(resolve_data_dir(data_dir))

    app = FastAPI(title="Global AI Vibrancy Index API", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return _error_body(400, "InvalidParameter", str(exc.errors()))

    @app.exception_handler(WeightOutOfRange)
    async def on_weight_range(request: Request, exc: WeightOutOfRange):
        return _error_body(400, "WeightOutOfRange", str(exc))

    @app.exception_handler(ZeroWeightSum)
    async def on_zero_weight(request: Request, exc: ZeroWeightSum):
        return _error_body(422, "ZeroWeightSum", str(exc))

    @app.exception_handler(MissingPopulation)
    async def on_missing_population(request: Request, exc: MissingPopulation):
        return _error_body(422, "MissingPopulation", str(exc))

    for kind in (UnknownYear, UnknownSubIndex, UnknownIndicator, UnknownCountry, UnknownPillar):

        @app.exception_handler(kind)
        async def on_not_found(request: Request, exc: Exception, _kind=kind):
            return _error_body(404, _kind.__name__, str(exc))

    @app.exception_handler(DataError)
    async def on_data_error(request: Request, exc: DataError):
        return _error_body(400, type(exc).__name__, str(exc))

    def build_ranking(year: int, per_capita: bool, sub_index, weights) -> dict:
        if sub_index:
            cards = compute_sub_index(
                bundle.observations,
                bundle.metadata,
                weights=weights,
                sub_index=sub_index,
                year=year,
                per_capita=per_capita,
                population=bundle.population,
            )
        else:
            cards = compute_scores(
                bundle.observations,
                bundle.metadata,
                weights=weights,
                year=year,
                per_capita=per_capita,
                population=bundle.population,
            )
        return payloads.ranking_payload(
            cards,
            bundle.metadata,
            weights,
            per_capita=per_capita,
            sub_index=sub_index or None,
            country_names=bundle.country_names,
        )

    @app.get("/api/v1/rankings")
    async def get_rankings(year: int, per_capita: str = "false", sub_index: str = ""):
        return build_ranking(
            year, _parse_bool(per_capita, "per_capita"), sub_index, bundle.default_weights
        )

    @app.post("/api/v1/rankings")
    async def post_rankings(body: dict):
        if not isinstance(body, dict):
            raise RequestValidationError([{"loc": ["body"], "msg": "body must be an object"}])
        if "year" not in body:
            raise RequestValidationError([{"loc": ["year"], "msg": "year is required"}])
        try:
            year = int(body["year"])
        except (TypeError, ValueError):
            raise RequestValidationError(
                [{"loc": ["year"], "msg": "year must be an integer"}]
            ) from None
        per_capita = _parse_bool(body.get("per_capita", False), "per_capita")
        sub_index = body.get("sub_index") or ""
        for section in ("indicator_weights", "pillar_weights"):
            overrides = body.get(section) or {}
            if not isinstance(overrides, dict):
                raise RequestValidationError(
                    [{"loc": [section], "msg": f"{section} must be a map of id to weight"}]
                )
            for key, value in overrides.items():
                if section == "indicator_weights" and not bundle.metadata.has_indicator(key):
                    raise UnknownIndicator(key)
                if section == "pillar_weights" and key not in {
                    p.id for p in bundle.metadata.pillars
                }:
                    raise UnknownPillar(key)
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise WeightOutOfRange(key, value)
        weights = bundle.default_weights.merged(
            body.get("indicator_weights") or {}, body.get("pillar_weights") or {}
        )
        return build_ranking(year, per_capita, sub_index, weights)

    @app.get("/api/v1/metrics/{indicator_id}")
    async def get_metrics(
        indicator_id: str,
        country: str = "",
        from_year: Optional[int] = Query(None, alias="from"),
        to_year: Optional[int] = Query(None, alias="to"),
    ):
        if not bundle.metadata.has_indicator(indicator_id):
            raise UnknownIndicator(indicator_id)
        if country:
            if country not in bundle.country_names:
                raise UnknownCountry(country)
            countries = [country]
        else:
            countries = list(bundle.observations.countries)
        years = list(bundle.observations.years)
        lo = from_year if from_year is not None else years[0]
        hi = to_year if to_year is not None else years[-1]
        if lo > hi:
            raise RequestValidationError(
                [{"loc": ["from", "to"], "msg": "from must not exceed to"}]
            )
        selected = [y for y in years if lo <= y <= hi]
        return payloads.metrics_payload(
            bundle.observations,
            bundle.metadata,
            indicator_id,
            countries,
            selected,
            country_names=bundle.country_names,
        )

    @app.get("/api/v1/trajectories")
    async def get_trajectories(
        from_year: Optional[int] = Query(None, alias="from"),
        to_year: Optional[int] = Query(None, alias="to"),
        per_capita: str = "false",
    ):
        per_capita_flag = _parse_bool(per_capita, "per_capita")
        years = list(bundle.observations.years)
        lo = from_year if from_year is not None else years[0]
        hi = to_year if to_year is not None else years[-1]
        if lo > hi:
            raise RequestValidationError(
                [{"loc": ["from", "to"], "msg": "from must not exceed to"}]
            )
        for bound in (lo, hi):
            if bound not in years:
                raise UnknownYear(bound)
        selected = [y for y in years if lo <= y <= hi]
        trajectories = rank_trajectories(
            bundle.observations,
            bundle.metadata,
            weights=bundle.default_weights,
            years=selected,
            per_capita=per_capita_flag,
            population=bundle.population,
        )
        return payloads.trajectories_payload(trajectories, per_capita=per_capita_flag)

    @app.get("/api/v1/coverage")
    async def get_coverage():
        report = compute_coverage(bundle.observations, bundle.metadata)
        return payloads.coverage_payload(report)

    @app.get("/api/v1/meta")
    async def get_meta():
        return payloads.meta_payload(bundle)

    if ui_dir:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def run(
    data_dir=None,
    host: str = "127.0.0.1",
    port: int = DEFAULT_PORT,
    ui_dir=None,
) -> None:
    """Blocking entry point used by the serve command."""
    import uvicorn

    app = create_app(data_dir=data_dir, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
