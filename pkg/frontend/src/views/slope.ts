/** Slope chart of rank trajectories: one line per country, rank 1 on top. */

import type { TrajectoriesResponse } from "../api.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const WIDTH = 860;
const HEIGHT = 640;
const MARGIN = { top: 24, right: 150, bottom: 28, left: 40 };

export function renderSlope(container: HTMLElement, payload: TrajectoriesResponse): void {
  container.textContent = "";
  const years = Array.from(
    new Set(payload.trajectories.flatMap((t) => t.points.map((p) => p.year))),
  ).sort((a, b) => a - b);
  const maxRank = Math.max(
    1,
    ...payload.trajectories.flatMap((t) => t.points.map((p) => p.rank)),
  );

  const plotWidth = WIDTH - MARGIN.left - MARGIN.right;
  const plotHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  const xOf = (year: number): number => {
    const index = years.indexOf(year);
    const step = years.length > 1 ? plotWidth / (years.length - 1) : 0;
    return MARGIN.left + index * step;
  };
  // Inverted axis: rank 1 maps to the smallest y.
  const yOf = (rank: number): number => {
    const step = maxRank > 1 ? plotHeight / (maxRank - 1) : 0;
    return MARGIN.top + (rank - 1) * step;
  };

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "slope-chart");

  for (const year of years) {
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(xOf(year)));
    label.setAttribute("y", String(HEIGHT - 8));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("class", "axis-label");
    label.textContent = String(year);
    svg.appendChild(label);
  }

  for (const trajectory of payload.trajectories) {
    const sorted = [...trajectory.points].sort((a, b) => a.year - b.year);
    const line = document.createElementNS(SVG_NS, "polyline");
    line.setAttribute(
      "points",
      sorted.map((p) => `${xOf(p.year)},${yOf(p.rank)}`).join(" "),
    );
    line.setAttribute("fill", "none");
    line.setAttribute("class", "slope-line");
    line.dataset.country = trajectory.country;
    svg.appendChild(line);

    for (const point of sorted) {
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(xOf(point.year)));
      dot.setAttribute("cy", String(yOf(point.rank)));
      dot.setAttribute("r", "3");
      dot.setAttribute("class", "slope-dot");
      dot.dataset.country = trajectory.country;
      dot.dataset.year = String(point.year);
      dot.dataset.rank = String(point.rank);
      svg.appendChild(dot);
    }

    const last = sorted[sorted.length - 1];
    if (last) {
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(xOf(last.year) + 8));
      label.setAttribute("y", String(yOf(last.rank) + 4));
      label.setAttribute("class", "slope-label");
      label.textContent = `${last.rank}. ${trajectory.country}`;
      svg.appendChild(label);
    }
  }

  container.appendChild(svg);
}
