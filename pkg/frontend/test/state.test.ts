// Store behavior: range clamping, pause batching (exactly one POST),
// immediate commits while running, rejection revert, clock gating.

import { describe, expect, it } from "vitest";

import { Poster, PostResult, SceneStore, scenarioFromDocument, sliceAt } from "../src/state.js";
import { SceneDocument, ScenarioWire } from "../src/types.js";

function doc(revision = 0, threshold = 10): SceneDocument {
  return {
    schema_version: 1,
    revision,
    window: { start: 0, end: 10 },
    comm_threshold: threshold,
    reference_time: 0,
    platforms: [
      {
        id: "a", center_x: 0, center_y: 0, altitude: 2, orbit_radius: 2,
        angular_velocity: 1, initial_phase: 0, position_at_reference: [2, 0, 2],
      },
      {
        id: "b", center_x: 8, center_y: 0, altitude: 2, orbit_radius: 2,
        angular_velocity: -1, initial_phase: 0, position_at_reference: [10, 0, 2],
      },
    ],
    pairs: [{ a: "a", b: "b", threshold, live: [[0, 10]] }],
    slices: [
      { start: 0, end: 4, edges: [["a", "b"]], connected: true },
      { start: 4, end: 10, edges: [], connected: false },
    ],
    connected_throughout: false,
  };
}

function recordingPoster(): { calls: ScenarioWire[]; poster: Poster } {
  const calls: ScenarioWire[] = [];
  let revision = 0;
  const poster: Poster = async (body) => {
    calls.push(body);
    revision += 1;
    const next = doc(revision, body.comm_threshold);
    next.platforms[0].center_x = body.platforms[0].center_x;
    return { ok: true, doc: next } satisfies PostResult;
  };
  return { calls, poster };
}

describe("edit clamping", () => {
  it("clamps centers to the grid and thresholds/speed to their ranges", () => {
    const { poster } = recordingPoster();
    const store = new SceneStore(poster);
    store.adopt(doc());
    store.paused = true; // keep edits local for this test

    expect(store.applyEdit({ kind: "platform", id: "a", field: "centerX", value: 99 })).toBe(12);
    expect(store.applyEdit({ kind: "platform", id: "a", field: "centerZ", value: -99 })).toBe(-12);
    expect(store.applyEdit({ kind: "platform", id: "a", field: "height", value: 0 })).toBe(1);
    expect(store.applyEdit({ kind: "platform", id: "a", field: "radius", value: 11 })).toBe(10);
    expect(store.applyEdit({ kind: "platform", id: "a", field: "speed", value: 7 })).toBe(5);
    expect(store.applyEdit({ kind: "threshold", a: "a", b: "b", value: 25 })).toBe(20);

    const a = store.working!.platforms[0];
    expect(a.center_x).toBe(12);
    expect(a.center_y).toBe(-12);
    expect(a.altitude).toBe(1);
    expect(a.orbit_radius).toBe(10);
    expect(Math.abs(a.angular_velocity)).toBe(5);
    expect(store.working!.pair_thresholds).toEqual([{ a: "a", b: "b", threshold: 20 }]);
  });

  it("speed edits preserve the direction of travel", () => {
    const { poster } = recordingPoster();
    const store = new SceneStore(poster);
    store.adopt(doc());
    store.paused = true;
    store.applyEdit({ kind: "platform", id: "b", field: "speed", value: 3 });
    expect(store.working!.platforms[1].angular_velocity).toBe(-3);
  });
});

describe("pause batching", () => {
  it("three edits while paused produce exactly one POST on resume", async () => {
    const { calls, poster } = recordingPoster();
    const store = new SceneStore(poster);
    store.adopt(doc());

    await store.setPaused(true);
    store.applyEdit({ kind: "platform", id: "a", field: "centerX", value: 3 });
    store.applyEdit({ kind: "platform", id: "a", field: "height", value: 4 });
    store.applyEdit({ kind: "threshold", a: "a", b: "b", value: 6 });
    expect(calls.length).toBe(0);

    await store.setPaused(false);
    expect(calls.length).toBe(1);
    // the single POST carries the combined batch
    expect(calls[0].platforms[0].center_x).toBe(3);
    expect(calls[0].platforms[0].altitude).toBe(4);
    expect(calls[0].pair_thresholds).toEqual([{ a: "a", b: "b", threshold: 6 }]);
    // server response adopted
    expect(store.doc!.revision).toBe(1);
  });

  it("resume without edits does not POST", async () => {
    const { calls, poster } = recordingPoster();
    const store = new SceneStore(poster);
    store.adopt(doc());
    await store.setPaused(true);
    await store.setPaused(false);
    expect(calls.length).toBe(0);
  });

  it("unpaused edits commit immediately, one POST each", async () => {
    const { calls, poster } = recordingPoster();
    const store = new SceneStore(poster);
    store.adopt(doc());
    store.applyEdit({ kind: "platform", id: "a", field: "centerX", value: 1 });
    await store.idle();
    store.applyEdit({ kind: "platform", id: "a", field: "centerX", value: 2 });
    await store.idle();
    expect(calls.length).toBe(2);
    expect(store.doc!.revision).toBe(2);
  });
});

describe("rejection handling", () => {
  it("a 400 reverts the working copy and surfaces the field error", async () => {
    const rejecting: Poster = async () => ({
      ok: false,
      error: { error: "must be > 0", field: "platforms[0].orbit_radius" },
    });
    const store = new SceneStore(rejecting);
    const base = doc();
    store.adopt(base);
    store.applyEdit({ kind: "platform", id: "a", field: "centerX", value: 5 });
    await store.idle();
    expect(store.fieldError?.field).toBe("platforms[0].orbit_radius");
    // reverted to the last adopted document
    expect(store.working).toEqual(scenarioFromDocument(base));
  });

  it("a network failure freezes the last snapshot and flags the banner", async () => {
    const failing: Poster = async () => {
      throw new Error("connection refused");
    };
    const store = new SceneStore(failing);
    store.adopt(doc());
    store.applyEdit({ kind: "platform", id: "a", field: "centerX", value: 5 });
    await store.idle();
    expect(store.connectionLost).toBe(true);
    expect(store.doc!.revision).toBe(0);
  });
});

describe("simulation clock", () => {
  it("advances only while unpaused, scaled by playback speed", () => {
    const { poster } = recordingPoster();
    const store = new SceneStore(poster);
    store.adopt(doc());
    store.playbackSpeed = 2;
    store.tick(0.5);
    expect(store.clock).toBe(1);
    store.paused = true;
    store.tick(5);
    expect(store.clock).toBe(1);
  });

  it("wraps into the window for slice lookup", () => {
    const d = doc();
    expect(sliceAt(d, 2)!.connected).toBe(true);
    expect(sliceAt(d, 5)!.connected).toBe(false);
    expect(sliceAt(d, 12)!.connected).toBe(true); // 12 wraps to 2
    expect(sliceAt(d, -1)!.connected).toBe(false); // -1 wraps to 9
  });
});
