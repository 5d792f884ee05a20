// UI scene state: the server document plus view state, with the edit
// lifecycle. Edits apply to a local working copy immediately; each
// commit POSTs the full parameter set and adopts the recomputed
// document (the server stays authoritative for intervals and
// connectivity). While paused, edits batch into a single POST that
// fires on resume.

import { clamp, ControlRanges, DEFAULT_RANGES } from "./ranges.js";
import {
  PostError,
  ScenarioWire,
  SceneDocument,
  SliceWire,
} from "./types.js";

export type PlatformField = "centerX" | "centerZ" | "height" | "radius" | "speed";

export type Edit =
  | { kind: "platform"; id: string; field: PlatformField; value: number }
  | { kind: "threshold"; a: string; b: string; value: number };

export type PostResult =
  | { ok: true; doc: SceneDocument }
  | { ok: false; error: PostError };

export type Poster = (body: ScenarioWire) => Promise<PostResult>;

function pairKey(a: string, b: string): string {
  return a <= b ? `${a}|${b}` : `${b}|${a}`;
}

export function scenarioFromDocument(doc: SceneDocument): ScenarioWire {
  const overrides = doc.pairs
    .filter((p) => p.threshold !== doc.comm_threshold)
    .map((p) => ({ a: p.a, b: p.b, threshold: p.threshold }));
  return {
    platforms: doc.platforms.map((p) => ({
      id: p.id,
      center_x: p.center_x,
      center_y: p.center_y,
      altitude: p.altitude,
      orbit_radius: p.orbit_radius,
      angular_velocity: p.angular_velocity,
      initial_phase: p.initial_phase,
    })),
    window: { ...doc.window },
    comm_threshold: doc.comm_threshold,
    ...(overrides.length ? { pair_thresholds: overrides } : {}),
  };
}

/** Wrap the free-running simulation clock into the document window. */
export function windowTime(doc: SceneDocument, clock: number): number {
  const span = doc.window.end - doc.window.start;
  if (span <= 0) return doc.window.start;
  const t = (clock - doc.window.start) % span;
  return doc.window.start + (t < 0 ? t + span : t);
}

export function sliceAt(doc: SceneDocument, clock: number): SliceWire | null {
  const t = windowTime(doc, clock);
  for (const s of doc.slices) {
    if (t >= s.start && t <= s.end) return s;
  }
  return doc.slices.length ? doc.slices[doc.slices.length - 1] : null;
}

export class SceneStore {
  doc: SceneDocument | null = null;
  working: ScenarioWire | null = null;
  paused = false;
  clock = 0;
  playbackSpeed = 1;
  fieldError: PostError | null = null;
  connectionLost = false;

  private pendingWhilePaused = false;
  private inFlight = false;
  private queued = false;
  private postsSent = 0;
  private commitChain: Promise<void> = Promise.resolve();

  constructor(
    private readonly poster: Poster,
    readonly ranges: ControlRanges = DEFAULT_RANGES,
  ) {}

  get postCount(): number {
    return this.postsSent;
  }

  adopt(doc: SceneDocument): void {
    this.doc = doc;
    this.working = scenarioFromDocument(doc);
    this.fieldError = null;
    this.connectionLost = false;
  }

  /** Advance the simulation clock; frozen while paused. */
  tick(dtSeconds: number): void {
    if (!this.paused) {
      this.clock += dtSeconds * this.playbackSpeed;
    }
  }

  setPaused(paused: boolean): Promise<void> {
    const resuming = this.paused && !paused;
    this.paused = paused;
    if (resuming && this.pendingWhilePaused) {
      this.pendingWhilePaused = false;
      this.commitChain = this.commit();
    }
    return this.commitChain;
  }

  /** Settles once every started or queued POST has finished. */
  idle(): Promise<void> {
    return this.commitChain;
  }

  /** Clamp and apply an edit to the working copy.
   *
   * Returns the clamped value. Unpaused edits commit immediately;
   * paused edits batch into the single POST fired on resume.
   */
  applyEdit(edit: Edit): number {
    if (!this.working) throw new Error("no scene loaded");
    let applied: number;
    if (edit.kind === "platform") {
      const p = this.working.platforms.find((x) => x.id === edit.id);
      if (!p) throw new Error(`unknown platform ${edit.id}`);
      switch (edit.field) {
        case "centerX":
          applied = clamp(edit.value, this.ranges.centerX);
          p.center_x = applied;
          break;
        case "centerZ":
          applied = clamp(edit.value, this.ranges.centerZ);
          p.center_y = applied;
          break;
        case "height":
          applied = clamp(edit.value, this.ranges.height);
          p.altitude = applied;
          break;
        case "radius":
          applied = clamp(edit.value, this.ranges.radius);
          p.orbit_radius = applied;
          break;
        case "speed": {
          applied = clamp(Math.abs(edit.value), this.ranges.speed);
          const sign = p.angular_velocity < 0 ? -1 : 1;
          p.angular_velocity = sign * applied;
          break;
        }
      }
    } else {
      applied = clamp(edit.value, this.ranges.threshold);
      const key = pairKey(edit.a, edit.b);
      const list = this.working.pair_thresholds ?? [];
      const existing = list.find((x) => pairKey(x.a, x.b) === key);
      if (existing) {
        existing.threshold = applied;
      } else {
        list.push({ a: edit.a, b: edit.b, threshold: applied });
      }
      this.working.pair_thresholds = list;
    }
    if (this.paused) {
      this.pendingWhilePaused = true;
      return applied;
    }
    this.commitChain = this.commit();
    return applied;
  }

  /** POST the working copy; adopt the recomputed document, or revert
   * the working copy and surface the field error on rejection. */
  async commit(): Promise<void> {
    if (!this.working) return;
    if (this.inFlight) {
      this.queued = true;
      return;
    }
    this.inFlight = true;
    try {
      const body: ScenarioWire = JSON.parse(JSON.stringify(this.working));
      this.postsSent += 1;
      const result = await this.poster(body);
      if (result.ok) {
        this.adopt(result.doc);
      } else {
        this.fieldError = result.error;
        if (this.doc) this.working = scenarioFromDocument(this.doc);
      }
    } catch {
      this.connectionLost = true; // keep the last snapshot frozen
    } finally {
      this.inFlight = false;
      if (this.queued) {
        this.queued = false;
        await this.commit();
      }
    }
  }
}
