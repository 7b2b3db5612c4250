/** Application shell: controls, state, fetching, and view dispatch.
 *
 * The shell owns a single UiState and re-renders the active view from
 * fresh API responses. It never computes scores itself; weight changes
 * go to POST /rankings and the response drives the display. At most one
 * rankings request is live: every refresh bumps a sequence number and
 * stale responses are dropped.
 */

import { ApiClient, ApiError } from "./api.js";
import type { MetaResponse, RankingResponse, WeightOverrideRequest } from "./api.js";
import { debounce } from "./debounce.js";
import {
  DEBOUNCE_MS,
  SLIDER_MAX,
  SLIDER_MIN,
  SLIDER_STEP,
  UiState,
  ViewName,
  setWeight,
  snapWeight,
  toggleCountry,
  weightOverrides,
  weightsAreDefault,
} from "./state.js";
import { renderBar } from "./views/bar.js";
import { renderMetrics } from "./views/metrics.js";
import { renderSlope } from "./views/slope.js";
import { renderTable } from "./views/table.js";

const VIEWS: { id: ViewName; label: string }[] = [
  { id: "bar", label: "Bar" },
  { id: "table", label: "Table" },
  { id: "slope", label: "Slope" },
  { id: "metrics", label: "Metrics" },
];

interface WeightDefaults {
  pillars: Record<string, number>;
  indicators: Record<string, number>;
}

export class App {
  state!: UiState;
  meta!: MetaResponse;

  private api: ApiClient;
  private defaults!: WeightDefaults;
  private seq = 0;
  private inFlight = 0;
  private debouncePending = false;
  private debouncedRefresh: () => void;

  private bannerEl!: HTMLElement;
  private viewEl!: HTMLElement;
  private slidersEl!: HTMLElement;
  private pickerEl!: HTMLElement;
  private indicatorSelect!: HTMLSelectElement;

  constructor(
    private root: HTMLElement,
    baseUrl = "",
  ) {
    this.api = new ApiClient(baseUrl);
    this.debouncedRefresh = debounce(DEBOUNCE_MS, () => {
      this.debouncePending = false;
      void this.refresh();
    });
  }

  async init(): Promise<void> {
    this.meta = await this.api.getMeta();
    this.defaults = {
      pillars: Object.fromEntries(this.meta.pillars.map((p) => [p.id, p.default_weight])),
      indicators: Object.fromEntries(
        this.meta.indicators.map((i) => [i.id, i.default_weight]),
      ),
    };
    const years = this.meta.years;
    this.state = {
      selectedYear: years[years.length - 1],
      perCapita: false,
      view: "bar",
      selectedCountries: [],
      pillarWeights: { ...this.defaults.pillars },
      indicatorWeights: { ...this.defaults.indicators },
      selectedSubIndex: "",
      selectedIndicator: this.meta.indicators[0]?.id ?? "",
    };
    this.buildSkeleton();
    await this.refresh();
  }

  /** Resolves once no debounce is pending and no request is in flight. */
  whenIdle(): Promise<void> {
    return new Promise((resolve) => {
      const check = (): void => {
        if (!this.debouncePending && this.inFlight === 0) {
          resolve();
        } else {
          setTimeout(check, 20);
        }
      };
      check();
    });
  }

  private buildSkeleton(): void {
    this.root.textContent = "";

    const header = document.createElement("header");
    header.className = "toolbar";

    const title = document.createElement("h1");
    title.textContent = "Global AI Vibrancy";
    header.appendChild(title);

    const yearSelect = document.createElement("select");
    yearSelect.id = "year-select";
    for (const year of this.meta.years) {
      const option = document.createElement("option");
      option.value = String(year);
      option.textContent = String(year);
      option.selected = year === this.state.selectedYear;
      yearSelect.appendChild(option);
    }
    yearSelect.addEventListener("change", () => {
      this.state.selectedYear = Number(yearSelect.value);
      void this.refresh();
    });
    header.appendChild(this.labeled("Year", yearSelect));

    const perCapita = document.createElement("input");
    perCapita.type = "checkbox";
    perCapita.id = "per-capita";
    perCapita.addEventListener("change", () => {
      this.state.perCapita = perCapita.checked;
      void this.refresh();
    });
    header.appendChild(this.labeled("Per capita", perCapita));

    const subIndexSelect = document.createElement("select");
    subIndexSelect.id = "sub-index-select";
    const full = document.createElement("option");
    full.value = "";
    full.textContent = "Full index";
    subIndexSelect.appendChild(full);
    for (const sub of this.meta.sub_indices) {
      const option = document.createElement("option");
      option.value = sub.id;
      option.textContent = sub.name;
      subIndexSelect.appendChild(option);
    }
    subIndexSelect.addEventListener("change", () => {
      this.state.selectedSubIndex = subIndexSelect.value;
      void this.refresh();
    });
    header.appendChild(this.labeled("Scope", subIndexSelect));

    const switcher = document.createElement("nav");
    switcher.className = "view-switch";
    for (const view of VIEWS) {
      const button = document.createElement("button");
      button.type = "button";
      button.dataset.view = view.id;
      button.textContent = view.label;
      button.addEventListener("click", () => {
        this.state.view = view.id;
        this.syncViewControls();
        void this.refresh();
      });
      switcher.appendChild(button);
    }
    header.appendChild(switcher);

    const reset = document.createElement("button");
    reset.type = "button";
    reset.id = "reset-weights";
    reset.textContent = "Reset weights";
    reset.addEventListener("click", () => {
      this.state.pillarWeights = { ...this.defaults.pillars };
      this.state.indicatorWeights = { ...this.defaults.indicators };
      this.syncSliders();
      void this.refresh();
    });
    header.appendChild(reset);

    this.bannerEl = document.createElement("div");
    this.bannerEl.id = "banner";
    this.bannerEl.hidden = true;

    const layout = document.createElement("div");
    layout.className = "layout";

    this.slidersEl = document.createElement("aside");
    this.slidersEl.id = "sliders";
    this.buildSliders();

    const main = document.createElement("section");
    main.className = "content";

    this.indicatorSelect = document.createElement("select");
    this.indicatorSelect.id = "indicator-select";
    for (const indicator of this.meta.indicators) {
      const option = document.createElement("option");
      option.value = indicator.id;
      option.textContent = indicator.name;
      this.indicatorSelect.appendChild(option);
    }
    this.indicatorSelect.addEventListener("change", () => {
      this.state.selectedIndicator = this.indicatorSelect.value;
      void this.refresh();
    });

    this.pickerEl = document.createElement("div");
    this.pickerEl.id = "country-picker";
    for (const country of this.meta.countries) {
      const box = document.createElement("input");
      box.type = "checkbox";
      box.className = "country-box";
      box.dataset.code = country.code;
      box.addEventListener("change", () => this.onCountryToggled(box));
      const label = document.createElement("label");
      label.className = "country-option";
      label.append(box, ` ${country.code}`);
      label.title = country.name;
      this.pickerEl.appendChild(label);
    }

    this.viewEl = document.createElement("div");
    this.viewEl.id = "view";

    main.append(this.labeled("Indicator", this.indicatorSelect), this.pickerEl, this.viewEl);
    layout.append(this.slidersEl, main);
    this.root.append(header, this.bannerEl, layout);
    this.syncViewControls();
  }

  private labeled(text: string, control: HTMLElement): HTMLLabelElement {
    const label = document.createElement("label");
    label.className = "control";
    const caption = document.createElement("span");
    caption.textContent = text;
    label.append(caption, control);
    return label;
  }

  private buildSliders(): void {
    this.slidersEl.textContent = "";
    const heading = document.createElement("h2");
    heading.textContent = "Weights";
    this.slidersEl.appendChild(heading);

    for (const pillar of this.meta.pillars) {
      const group = document.createElement("details");
      group.className = "pillar-group";
      const summary = document.createElement("summary");
      summary.appendChild(
        this.sliderRow(pillar.name, "pillar", pillar.id, this.state.pillarWeights[pillar.id]),
      );
      group.appendChild(summary);

      for (const indicator of this.meta.indicators) {
        if (indicator.pillar !== pillar.id) continue;
        group.appendChild(
          this.sliderRow(
            indicator.name,
            "indicator",
            indicator.id,
            this.state.indicatorWeights[indicator.id],
          ),
        );
      }
      this.slidersEl.appendChild(group);
    }
  }

  private sliderRow(
    name: string,
    level: "pillar" | "indicator",
    id: string,
    value: number,
  ): HTMLElement {
    const row = document.createElement("div");
    row.className = `slider-row ${level}-slider`;

    const caption = document.createElement("span");
    caption.className = "slider-name";
    caption.textContent = name;

    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = String(SLIDER_MIN);
    slider.max = String(SLIDER_MAX);
    slider.step = String(SLIDER_STEP);
    slider.value = String(value);
    if (level === "pillar") {
      slider.dataset.pillar = id;
    } else {
      slider.dataset.indicator = id;
    }

    const readout = document.createElement("span");
    readout.className = "slider-value";
    readout.textContent = String(value);

    slider.addEventListener("input", () => {
      const snapped = snapWeight(Number(slider.value));
      if (level === "pillar") {
        this.state.pillarWeights = setWeight(this.state.pillarWeights, id, snapped);
      } else {
        this.state.indicatorWeights = setWeight(this.state.indicatorWeights, id, snapped);
      }
      readout.textContent = String(snapped);
      this.debouncePending = true;
      this.debouncedRefresh();
    });

    row.append(caption, slider, readout);
    return row;
  }

  private syncSliders(): void {
    for (const slider of this.slidersEl.querySelectorAll<HTMLInputElement>("input[type=range]")) {
      const id = slider.dataset.pillar ?? slider.dataset.indicator ?? "";
      const value = slider.dataset.pillar
        ? this.state.pillarWeights[id]
        : this.state.indicatorWeights[id];
      slider.value = String(value);
      const readout = slider.parentElement?.querySelector(".slider-value");
      if (readout) readout.textContent = String(value);
    }
  }

  private syncViewControls(): void {
    for (const button of this.root.querySelectorAll<HTMLButtonElement>(".view-switch button")) {
      button.classList.toggle("active", button.dataset.view === this.state.view);
    }
    this.pickerEl.hidden = this.state.view !== "table" && this.state.view !== "metrics";
    const indicatorControl = this.indicatorSelect.parentElement;
    if (indicatorControl) {
      (indicatorControl as HTMLElement).hidden = this.state.view !== "metrics";
    }
  }

  private onCountryToggled(box: HTMLInputElement): void {
    const code = box.dataset.code ?? "";
    const next = toggleCountry(this.state.selectedCountries, code);
    if (next === null) {
      box.checked = false;
      this.showBanner("Comparison is limited to four countries.", "notice");
      return;
    }
    this.state.selectedCountries = next;
    if (this.state.view === "table" || this.state.view === "metrics") {
      void this.refresh();
    }
  }

  private showBanner(message: string, kind: "error" | "notice"): void {
    this.bannerEl.textContent = message;
    this.bannerEl.className = `banner ${kind}`;
    this.bannerEl.setAttribute("role", kind === "error" ? "alert" : "status");
    this.bannerEl.hidden = false;
  }

  private clearBanner(): void {
    this.bannerEl.hidden = true;
    this.bannerEl.textContent = "";
  }

  private rankingsRequest(): Promise<RankingResponse> {
    const { state } = this;
    const pillarOverrides = weightOverrides(state.pillarWeights, this.defaults.pillars);
    const indicatorOverrides = weightOverrides(
      state.indicatorWeights,
      this.defaults.indicators,
    );
    const untouched =
      weightsAreDefault(state.pillarWeights, this.defaults.pillars) &&
      weightsAreDefault(state.indicatorWeights, this.defaults.indicators);
    if (untouched) {
      return this.api.getRankings(state.selectedYear, state.perCapita, state.selectedSubIndex);
    }
    const body: WeightOverrideRequest = {
      year: state.selectedYear,
      per_capita: state.perCapita,
    };
    if (state.selectedSubIndex) body.sub_index = state.selectedSubIndex;
    if (Object.keys(pillarOverrides).length > 0) body.pillar_weights = pillarOverrides;
    if (Object.keys(indicatorOverrides).length > 0) {
      body.indicator_weights = indicatorOverrides;
    }
    return this.api.postRankings(body);
  }

  async refresh(): Promise<void> {
    const mySeq = ++this.seq;
    this.inFlight += 1;
    try {
      if (this.state.view === "bar") {
        const payload = await this.rankingsRequest();
        if (mySeq !== this.seq) return;
        this.clearBanner();
        renderBar(this.viewEl, payload, this.meta);
      } else if (this.state.view === "table") {
        const payload = await this.rankingsRequest();
        if (mySeq !== this.seq) return;
        this.clearBanner();
        renderTable(this.viewEl, payload, this.meta, this.state.selectedCountries);
      } else if (this.state.view === "slope") {
        const payload = await this.api.getTrajectories(this.state.perCapita);
        if (mySeq !== this.seq) return;
        this.clearBanner();
        renderSlope(this.viewEl, payload);
      } else {
        const payload = await this.api.getMetrics(
          this.state.selectedIndicator,
          this.state.selectedCountries,
        );
        if (mySeq !== this.seq) return;
        this.clearBanner();
        renderMetrics(this.viewEl, payload);
      }
    } catch (error) {
      if (mySeq !== this.seq) return;
      this.viewEl.textContent = "";
      const message =
        error instanceof ApiError
          ? `${error.kind}: ${error.message}`
          : `Request failed: ${String(error)}`;
      this.showBanner(message, "error");
    } finally {
      this.inFlight -= 1;
    }
  }
}
