/** Stacked horizontal bar view of a ranking response. */

import type { MetaResponse, RankingResponse } from "../api.js";

const PILLAR_COLORS = [
  "#4e79a7",
  "#f28e2b",
  "#e15759",
  "#76b7b2",
  "#59a14f",
  "#edc948",
  "#b07aa1",
  "#9c755f",
];

export function pillarColor(meta: MetaResponse, pillarId: string): string {
  const index = meta.pillars.findIndex((p) => p.id === pillarId);
  return PILLAR_COLORS[index >= 0 ? index % PILLAR_COLORS.length : 0];
}

/**
 * Renders one row per country in API order, a stacked segment per
 * surviving pillar sized by its contribution, and the index value as
 * the row label. All numbers come straight from the payload.
 */
export function renderBar(
  container: HTMLElement,
  payload: RankingResponse,
  meta: MetaResponse,
): void {
  container.textContent = "";
  const chart = document.createElement("div");
  chart.className = "bar-chart";
  const top = payload.rows.length > 0 ? payload.rows[0].index_value : 1;

  for (const row of payload.rows) {
    const line = document.createElement("div");
    line.className = "bar-row";
    line.dataset.country = row.country;
    line.dataset.rank = String(row.rank);
    line.dataset.indexValue = String(row.index_value);

    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = `${row.rank}. ${row.country_name}`;
    line.appendChild(label);

    const track = document.createElement("div");
    track.className = "bar-track";
    for (const [pillarId, contribution] of Object.entries(row.pillar_contributions)) {
      // A zeroed pillar weight arrives as contribution 0; nothing to stack.
      if (contribution <= 0) continue;
      const segment = document.createElement("div");
      segment.className = "bar-segment";
      segment.dataset.pillar = pillarId;
      segment.dataset.contribution = String(contribution);
      segment.style.width = `${(Math.max(contribution, 0) / top) * 100}%`;
      segment.style.backgroundColor = pillarColor(meta, pillarId);
      segment.title = `${pillarId}: ${contribution}`;
      track.appendChild(segment);
    }
    line.appendChild(track);

    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = String(row.index_value);
    line.appendChild(value);

    chart.appendChild(line);
  }
  container.appendChild(chart);
}
