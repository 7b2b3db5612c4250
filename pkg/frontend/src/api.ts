/** Typed client for the vibrancy service JSON API. */

export interface IndicatorCell {
  raw_value: number | null;
  normalized: number;
  weight_share: number;
  imputed: boolean;
  contribution: number;
}

export interface RankingRow {
  rank: number;
  country: string;
  country_name: string;
  index_value: number;
  pillar_scores: Record<string, number>;
  pillar_contributions: Record<string, number>;
  indicator_scores: Record<string, IndicatorCell>;
}

export interface RankingResponse {
  year: number;
  per_capita: boolean;
  sub_index: string | null;
  weight_fingerprint: string;
  rows: RankingRow[];
}

export interface TrajectoryPoint {
  year: number;
  rank: number;
}

export interface TrajectoriesResponse {
  per_capita: boolean;
  trajectories: { country: string; points: TrajectoryPoint[] }[];
}

export interface MetricPoint {
  year: number;
  value: number | null;
  missing: boolean;
}

export interface MetricsResponse {
  indicator: {
    id: string;
    name: string;
    pillar: string;
    scale_mode: string;
    source: string;
  };
  series: { country: string; country_name: string; points: MetricPoint[] }[];
}

export interface MetaResponse {
  pillars: { id: string; name: string; default_weight: number }[];
  indicators: {
    id: string;
    name: string;
    pillar: string;
    default_weight: number;
    scale_mode: string;
    sub_indices: string[];
    source: string;
  }[];
  sub_indices: { id: string; name: string; indicator_ids: string[] }[];
  countries: { code: string; name: string }[];
  years: number[];
  inclusion_overrides: string[];
  weight_shares: {
    pillars: Record<string, number>;
    indicators: Record<string, number>;
  };
  weight_fingerprint: string;
}

export interface WeightOverrideRequest {
  year: number;
  per_capita?: boolean;
  sub_index?: string;
  indicator_weights?: Record<string, number>;
  pillar_weights?: Record<string, number>;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public kind: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body = await response.json();
  if (!response.ok) {
    const detail = body?.error ?? { type: "HttpError", message: response.statusText };
    throw new ApiError(response.status, detail.type, detail.message);
  }
  return body as T;
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  getMeta(): Promise<MetaResponse> {
    return request(`${this.baseUrl}/api/v1/meta`);
  }

  getRankings(year: number, perCapita = false, subIndex = ""): Promise<RankingResponse> {
    const params = new URLSearchParams({ year: String(year) });
    if (perCapita) params.set("per_capita", "true");
    if (subIndex) params.set("sub_index", subIndex);
    return request(`${this.baseUrl}/api/v1/rankings?${params}`);
  }

  postRankings(body: WeightOverrideRequest): Promise<RankingResponse> {
    return request(`${this.baseUrl}/api/v1/rankings`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getTrajectories(perCapita = false): Promise<TrajectoriesResponse> {
    const params = new URLSearchParams();
    if (perCapita) params.set("per_capita", "true");
    const suffix = params.size > 0 ? `?${params}` : "";
    return request(`${this.baseUrl}/api/v1/trajectories${suffix}`);
  }

  getMetrics(indicatorId: string, countries: string[] = []): Promise<MetricsResponse> {
    // The API filters one country per call; fan out and merge for a
    // short selection, or fetch everything when none is chosen.
    if (countries.length === 0) {
      return request(`${this.baseUrl}/api/v1/metrics/${indicatorId}`);
    }
    const calls = countries.map((code) =>
      request<MetricsResponse>(
        `${this.baseUrl}/api/v1/metrics/${indicatorId}?country=${encodeURIComponent(code)}`,
      ),
    );
    return Promise.all(calls).then((parts) => ({
      indicator: parts[0].indicator,
      series: parts.flatMap((p) => p.series),
    }));
  }
}
