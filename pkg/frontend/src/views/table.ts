/** Comparison table: one column per selected country, rows grouped by pillar. */

import type { MetaResponse, RankingResponse, RankingRow } from "../api.js";

function cellText(value: number | null): string {
  return value === null ? "–" : String(value);
}

/**
 * Each indicator cell shows the raw value, normalized score, and
 * contribution exactly as the API reports them, plus a badge when the
 * raw value was imputed. Countries not in the selection are ignored.
 */
export function renderTable(
  container: HTMLElement,
  payload: RankingResponse,
  meta: MetaResponse,
  selectedCountries: string[],
): void {
  container.textContent = "";
  if (selectedCountries.length === 0) {
    const prompt = document.createElement("p");
    prompt.className = "empty-state";
    prompt.textContent = "Select up to four countries to compare.";
    container.appendChild(prompt);
    return;
  }

  const byCountry = new Map<string, RankingRow>();
  for (const row of payload.rows) {
    byCountry.set(row.country, row);
  }
  const columns = selectedCountries
    .map((code) => byCountry.get(code))
    .filter((row): row is RankingRow => row !== undefined);

  const table = document.createElement("table");
  table.className = "compare-table";

  const head = table.createTHead().insertRow();
  head.appendChild(document.createElement("th")).textContent = "Indicator";
  for (const row of columns) {
    const th = document.createElement("th");
    th.textContent = `${row.country_name} (#${row.rank})`;
    th.dataset.country = row.country;
    head.appendChild(th);
  }

  const body = table.createTBody();
  const indexRow = body.insertRow();
  indexRow.className = "index-row";
  indexRow.insertCell().textContent = "Vibrancy index";
  for (const row of columns) {
    const cell = indexRow.insertCell();
    cell.dataset.country = row.country;
    cell.dataset.indexValue = String(row.index_value);
    cell.textContent = String(row.index_value);
  }

  for (const pillar of meta.pillars) {
    const indicatorIds = meta.indicators
      .filter((ind) => ind.pillar === pillar.id)
      .map((ind) => ind.id)
      .filter((id) => columns.some((row) => id in row.indicator_scores));
    if (indicatorIds.length === 0) {
      continue;
    }

    const groupRow = body.insertRow();
    groupRow.className = "pillar-group";
    const groupCell = groupRow.insertCell();
    groupCell.colSpan = columns.length + 1;
    groupCell.textContent = pillar.name;

    for (const indicatorId of indicatorIds) {
      const definition = meta.indicators.find((ind) => ind.id === indicatorId);
      const tr = body.insertRow();
      tr.dataset.indicator = indicatorId;
      tr.insertCell().textContent = definition ? definition.name : indicatorId;
      for (const row of columns) {
        const cell = tr.insertCell();
        cell.dataset.country = row.country;
        const score = row.indicator_scores[indicatorId];
        if (!score) {
          cell.textContent = "–";
          continue;
        }
        cell.dataset.raw = cellText(score.raw_value);
        cell.dataset.normalized = String(score.normalized);
        cell.dataset.contribution = String(score.contribution);
        cell.dataset.imputed = String(score.imputed);

        const raw = document.createElement("span");
        raw.className = "cell-raw";
        raw.textContent = cellText(score.raw_value);
        const normalized = document.createElement("span");
        normalized.className = "cell-normalized";
        normalized.textContent = String(score.normalized);
        const contribution = document.createElement("span");
        contribution.className = "cell-contribution";
        contribution.textContent = String(score.contribution);
        cell.append(raw, " / ", normalized, " / ", contribution);

        if (score.imputed) {
          const badge = document.createElement("span");
          badge.className = "imputed-badge";
          badge.title = "Value imputed from the cross-country median";
          badge.textContent = "imputed";
          cell.appendChild(badge);
        }
      }
    }
  }

  const legend = document.createElement("p");
  legend.className = "table-legend";
  legend.textContent = "Cells show raw value / normalized score / contribution.";
  container.append(table, legend);
}
