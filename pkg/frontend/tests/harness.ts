/** Boots the real app against a spawned API server inside jsdom. */

import { App } from "../src/app.js";

export async function bootApp(baseUrl: string): Promise<App> {
  document.body.innerHTML = '<div id="root"></div>';
  const root = document.getElementById("root") as HTMLElement;
  const app = new App(root, baseUrl);
  await app.init();
  await app.whenIdle();
  return app;
}

export function setSlider(input: HTMLInputElement, value: number): void {
  input.value = String(value);
  input.dispatchEvent(new Event("input", { bubbles: true }));
}

export function pillarSlider(pillarId: string): HTMLInputElement {
  const slider = document.querySelector<HTMLInputElement>(
    `input[data-pillar="${pillarId}"]`,
  );
  if (!slider) throw new Error(`no slider for pillar ${pillarId}`);
  return slider;
}

export function clickView(view: string): void {
  const button = document.querySelector<HTMLButtonElement>(
    `.view-switch button[data-view="${view}"]`,
  );
  if (!button) throw new Error(`no view button ${view}`);
  button.click();
}

export function barOrder(): string[] {
  return Array.from(document.querySelectorAll<HTMLElement>(".bar-row")).map(
    (row) => row.dataset.country ?? "",
  );
}

/** Waits out the slider debounce, then any in-flight request. */
export async function settle(app: App, debounceMs = 320): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, debounceMs));
  await app.whenIdle();
}
