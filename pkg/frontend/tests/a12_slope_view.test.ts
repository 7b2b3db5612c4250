/** Slope view: plotted ranks equal /trajectories, rank 1 topmost. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import type { TrajectoriesResponse } from "../src/api.js";
import { bootApp, clickView } from "./harness.js";
import { startServer, type TestServer } from "./server.js";

let server: TestServer;

beforeAll(async () => {
  server = await startServer();
});

afterAll(() => {
  server.stop();
});

describe("slope view", () => {
  it("plots exactly the ranks the API reports", async () => {
    const app = await bootApp(server.baseUrl);
    clickView("slope");
    await app.whenIdle();

    const response = await fetch(`${server.baseUrl}/api/v1/trajectories`);
    const expected: TrajectoriesResponse = await response.json();

    const dots = document.querySelectorAll<SVGCircleElement>("circle.slope-dot");
    const totalPoints = expected.trajectories.reduce(
      (count, t) => count + t.points.length,
      0,
    );
    expect(dots.length).toBe(totalPoints);

    for (const trajectory of expected.trajectories) {
      const line = document.querySelector(
        `polyline.slope-line[data-country="${trajectory.country}"]`,
      );
      expect(line, trajectory.country).not.toBeNull();
      for (const point of trajectory.points) {
        const dot = document.querySelector<SVGCircleElement>(
          `circle.slope-dot[data-country="${trajectory.country}"][data-year="${point.year}"]`,
        );
        expect(dot, `${trajectory.country}@${point.year}`).not.toBeNull();
        expect(dot?.dataset.rank).toBe(String(point.rank));
      }
    }
  });

  it("renders rank 1 topmost with a monotone rank axis", async () => {
    const app = await bootApp(server.baseUrl);
    clickView("slope");
    await app.whenIdle();

    const dots = Array.from(
      document.querySelectorAll<SVGCircleElement>("circle.slope-dot"),
    );
    const byYear = new Map<string, { rank: number; cy: number }[]>();
    for (const dot of dots) {
      const year = dot.dataset.year ?? "";
      const entry = {
        rank: Number(dot.dataset.rank),
        cy: Number(dot.getAttribute("cy")),
      };
      byYear.set(year, [...(byYear.get(year) ?? []), entry]);
    }
    expect(byYear.size).toBeGreaterThan(1);

    for (const [year, entries] of byYear) {
      const sorted = [...entries].sort((a, b) => a.rank - b.rank);
      expect(sorted[0].rank, year).toBe(1);
      for (let i = 1; i < sorted.length; i++) {
        const prev = sorted[i - 1];
        const here = sorted[i];
        if (here.rank === prev.rank) {
          expect(here.cy, year).toBe(prev.cy);
        } else {
          expect(here.cy, year).toBeGreaterThan(prev.cy);
        }
      }
      // Rank 1 sits strictly above every lower-ranked country.
      const topmost = Math.min(...entries.map((e) => e.cy));
      expect(sorted[0].cy, year).toBe(topmost);
    }
  });
});
