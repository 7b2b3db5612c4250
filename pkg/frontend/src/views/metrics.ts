/** Indicator-over-time line chart with gaps at missing years. */

import type { MetricsResponse } from "../api.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const WIDTH = 860;
const HEIGHT = 420;
const MARGIN = { top: 20, right: 120, bottom: 28, left: 70 };

const SERIES_COLORS = [
  "#4e79a7",
  "#f28e2b",
  "#e15759",
  "#76b7b2",
  "#59a14f",
  "#edc948",
  "#b07aa1",
  "#9c755f",
  "#bab0ac",
  "#ff9da7",
];

export function renderMetrics(container: HTMLElement, payload: MetricsResponse): void {
  container.textContent = "";

  const heading = document.createElement("h3");
  heading.className = "metrics-title";
  heading.textContent = payload.indicator.name;
  container.appendChild(heading);

  const years = Array.from(
    new Set(payload.series.flatMap((s) => s.points.map((p) => p.year))),
  ).sort((a, b) => a - b);
  const values = payload.series.flatMap((s) =>
    s.points.filter((p) => p.value !== null).map((p) => p.value as number),
  );
  if (values.length === 0) {
    const note = document.createElement("p");
    note.className = "empty-state";
    note.textContent = "No data for this indicator.";
    container.appendChild(note);
    return;
  }
  const lo = Math.min(...values);
  const hi = Math.max(...values);

  const plotWidth = WIDTH - MARGIN.left - MARGIN.right;
  const plotHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  const xOf = (year: number): number => {
    const index = years.indexOf(year);
    const step = years.length > 1 ? plotWidth / (years.length - 1) : 0;
    return MARGIN.left + index * step;
  };
  const yOf = (value: number): number => {
    if (hi === lo) return MARGIN.top + plotHeight / 2;
    return MARGIN.top + (1 - (value - lo) / (hi - lo)) * plotHeight;
  };

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "metrics-chart");

  for (const year of years) {
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(xOf(year)));
    label.setAttribute("y", String(HEIGHT - 8));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("class", "axis-label");
    label.textContent = String(year);
    svg.appendChild(label);
  }
  for (const bound of [lo, hi]) {
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", "4");
    label.setAttribute("y", String(yOf(bound) + 4));
    label.setAttribute("class", "axis-label");
    label.textContent = String(bound);
    svg.appendChild(label);
  }

  payload.series.forEach((series, seriesIndex) => {
    const color = SERIES_COLORS[seriesIndex % SERIES_COLORS.length];
    // Break the polyline at missing years instead of interpolating.
    const runs: { year: number; value: number }[][] = [[]];
    for (const point of series.points) {
      if (point.value === null) {
        if (runs[runs.length - 1].length > 0) runs.push([]);
      } else {
        runs[runs.length - 1].push({ year: point.year, value: point.value });
      }
    }

    for (const run of runs) {
      if (run.length < 2) continue;
      const line = document.createElementNS(SVG_NS, "polyline");
      line.setAttribute("points", run.map((p) => `${xOf(p.year)},${yOf(p.value)}`).join(" "));
      line.setAttribute("fill", "none");
      line.setAttribute("stroke", color);
      line.setAttribute("class", "metrics-line");
      line.dataset.country = series.country;
      svg.appendChild(line);
    }

    let lastPoint: { year: number; value: number } | undefined;
    for (const point of series.points) {
      if (point.value === null) continue;
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(xOf(point.year)));
      dot.setAttribute("cy", String(yOf(point.value)));
      dot.setAttribute("r", "3");
      dot.setAttribute("fill", color);
      dot.setAttribute("class", "metrics-dot");
      dot.dataset.country = series.country;
      dot.dataset.year = String(point.year);
      dot.dataset.value = String(point.value);
      svg.appendChild(dot);
      lastPoint = { year: point.year, value: point.value };
    }

    if (lastPoint) {
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(xOf(lastPoint.year) + 8));
      label.setAttribute("y", String(yOf(lastPoint.value) + 4));
      label.setAttribute("fill", color);
      label.setAttribute("class", "metrics-label");
      label.textContent = series.country;
      svg.appendChild(label);
    }
  });

  container.appendChild(svg);
}
