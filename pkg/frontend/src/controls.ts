// DOM control panel: platform sliders, per-pair thresholds, playback.

import { RangeSpec } from "./ranges.js";
import { Edit, PlatformField, SceneStore, sliceAt } from "./state.js";
import { SceneDocument } from "./types.js";

const PLATFORM_FIELDS: { field: PlatformField; label: string; range: keyof SceneStore["ranges"] }[] = [
  { field: "centerX", label: "center X", range: "centerX" },
  { field: "centerZ", label: "center Z", range: "centerZ" },
  { field: "height", label: "height", range: "height" },
  { field: "radius", label: "orbit radius", range: "radius" },
  { field: "speed", label: "speed", range: "speed" },
];

export class ControlPanel {
  private selected: string | null = null;

  constructor(
    private readonly rootEl: HTMLElement,
    private readonly store: SceneStore,
  ) {}

  rebuild(doc: SceneDocument): void {
    if (!this.selected || !doc.platforms.some((p) => p.id === this.selected)) {
      this.selected = doc.platforms[0]?.id ?? null;
    }
    this.rootEl.replaceChildren();
    this.rootEl.append(
      this.playbackSection(),
      this.platformSection(doc),
      this.thresholdSection(doc),
      el("div", { id: "status-badges" }),
    );
    this.refreshBadges(doc);
  }

  refreshBadges(doc: SceneDocument): void {
    const badges = this.rootEl.querySelector("#status-badges");
    if (!badges) return;
    const slice = sliceAt(doc, this.store.clock);
    const overall = doc.connected_throughout ? "yes" : "no";
    const now = slice ? (slice.connected ? "connected" : "split") : "n/a";
    badges.replaceChildren(
      el("div", { class: `badge ${doc.connected_throughout ? "ok" : "bad"}` },
        `connected throughout: ${overall}`),
      el("div", { class: `badge ${slice?.connected ? "ok" : "bad"}` },
        `now: ${now}`),
      el("div", { class: "badge" }, `revision ${doc.revision}`),
      el("div", { class: "badge" }, `t = ${this.store.clock.toFixed(2)} s`),
    );
    const err = this.rootEl.querySelector("#field-error");
    if (err) {
      const fe = this.store.fieldError;
      err.textContent = fe ? `rejected: ${fe.field}: ${fe.error}` : "";
    }
  }

  private playbackSection(): HTMLElement {
    const pauseBtn = el("button", {}, this.store.paused ? "resume" : "pause");
    pauseBtn.addEventListener("click", () => {
      void this.store.setPaused(!this.store.paused);
      pauseBtn.textContent = this.store.paused ? "resume" : "pause";
    });
    const speed = sliderRow("playback", { min: 0.1, max: 8, step: 0.1 },
      this.store.playbackSpeed, (v) => {
        this.store.playbackSpeed = v;
      });
    return el("fieldset", {},
      el("legend", {}, "playback"),
      pauseBtn,
      speed,
      el("div", { id: "field-error", class: "error" }),
    );
  }

  private platformSection(doc: SceneDocument): HTMLElement {
    const select = el("select", {}) as HTMLSelectElement;
    for (const p of doc.platforms) {
      const opt = el("option", { value: p.id }, p.id) as HTMLOptionElement;
      opt.selected = p.id === this.selected;
      select.append(opt);
    }
    select.addEventListener("change", () => {
      this.selected = select.value;
      this.rebuild(doc);
    });

    const section = el("fieldset", {}, el("legend", {}, "platform"), select);
    const working = this.store.working;
    const current = working?.platforms.find((p) => p.id === this.selected);
    if (!current) return section;
    const values: Record<PlatformField, number> = {
      centerX: current.center_x,
      centerZ: current.center_y,
      height: current.altitude,
      radius: current.orbit_radius,
      speed: Math.abs(current.angular_velocity),
    };
    for (const { field, label, range } of PLATFORM_FIELDS) {
      section.append(
        sliderRow(label, this.store.ranges[range] as RangeSpec, values[field], (v) => {
          const edit: Edit = { kind: "platform", id: this.selected!, field, value: v };
          this.store.applyEdit(edit);
        }),
      );
    }
    return section;
  }

  private thresholdSection(doc: SceneDocument): HTMLElement {
    const section = el("fieldset", {}, el("legend", {}, "pair thresholds"));
    for (const pair of doc.pairs) {
      section.append(
        sliderRow(`${pair.a}-${pair.b}`, this.store.ranges.threshold, pair.threshold,
          (v) => {
            this.store.applyEdit({ kind: "threshold", a: pair.a, b: pair.b, value: v });
          }),
      );
    }
    return section;
  }
}

function sliderRow(
  label: string,
  range: RangeSpec,
  value: number,
  onCommit: (value: number) => void,
): HTMLElement {
  const input = el("input", {
    type: "range",
    min: String(range.min),
    max: String(range.max),
    step: String(range.step),
  }) as HTMLInputElement;
  input.value = String(value);
  const readout = el("span", { class: "readout" }, value.toFixed(2));
  input.addEventListener("input", () => {
    readout.textContent = Number(input.value).toFixed(2);
  });
  // commit on release, not on every pixel of drag
  input.addEventListener("change", () => onCommit(Number(input.value)));
  return el("label", { class: "row" }, el("span", {}, label), input, readout);
}

function el(tag: string, attrs: Record<string, string> = {}, ...children: (string | Node)[]): HTMLElement {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  node.append(...children);
  return node;
}
