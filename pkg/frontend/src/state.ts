/** UI state and its invariants: slider range, step, country cap. */

export type ViewName = "bar" | "table" | "slope" | "metrics";

export const SLIDER_MIN = 0;
export const SLIDER_MAX = 10;
export const SLIDER_STEP = 0.5;
export const MAX_TABLE_COUNTRIES = 4;
export const DEBOUNCE_MS = 250;

export interface UiState {
  selectedYear: number;
  perCapita: boolean;
  view: ViewName;
  selectedCountries: string[];
  pillarWeights: Record<string, number>;
  indicatorWeights: Record<string, number>;
  selectedSubIndex: string;
  selectedIndicator: string;
}

/** Clamp to [0, 10] and snap to the 0.5 grid. */
export function snapWeight(value: number): number {
  if (Number.isNaN(value)) return SLIDER_MIN;
  const clamped = Math.min(SLIDER_MAX, Math.max(SLIDER_MIN, value));
  return Math.round(clamped / SLIDER_STEP) * SLIDER_STEP;
}

export function setWeight(
  weights: Record<string, number>,
  id: string,
  value: number,
): Record<string, number> {
  return { ...weights, [id]: snapWeight(value) };
}

/**
 * Add or remove a country from the table selection. Returns the new
 * list, or null when adding would exceed the four-country cap.
 */
export function toggleCountry(selected: string[], code: string): string[] | null {
  if (selected.includes(code)) {
    return selected.filter((c) => c !== code);
  }
  if (selected.length >= MAX_TABLE_COUNTRIES) {
    return null;
  }
  return [...selected, code];
}

/** True when every slider still sits on its default value. */
export function weightsAreDefault(
  weights: Record<string, number>,
  defaults: Record<string, number>,
): boolean {
  return Object.keys(weights).every((id) => weights[id] === defaults[id]);
}

/**
 * Weight overrides to send with a rankings POST: only sliders that
 * moved off their defaults, so the default state maps to a bare query.
 */
export function weightOverrides(
  weights: Record<string, number>,
  defaults: Record<string, number>,
): Record<string, number> {
  const overrides: Record<string, number> = {};
  for (const [id, value] of Object.entries(weights)) {
    if (value !== defaults[id]) {
      overrides[id] = value;
    }
  }
  return overrides;
}
