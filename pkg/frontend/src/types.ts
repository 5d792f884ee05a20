// Wire types for the scene service (SI units, radians, seconds).

export interface PlatformWire {
  id: string;
  center_x: number;
  center_y: number;
  altitude: number;
  orbit_radius: number;
  angular_velocity: number;
  initial_phase: number;
  position_at_reference: [number, number, number];
}

export interface PairWire {
  a: string;
  b: string;
  threshold: number;
  live: [number, number][];
}

export interface SliceWire {
  start: number;
  end: number;
  edges: [string, string][];
  connected: boolean;
}

export interface CoveragePlanWire {
  strategy: number;
  platforms_per_orbit: number;
  orbit_count: number;
  total: number;
  orbit_radius: number;
  coverage_radius: number;
  tile_length: number;
  tile_width: number;
  centers: [number, number][];
  platform_phases: number[];
  corridor: { length: number; width: number; height: number };
}

export interface SceneDocument {
  schema_version: number;
  revision: number;
  window: { start: number; end: number };
  comm_threshold: number;
  reference_time: number;
  platforms: PlatformWire[];
  pairs: PairWire[];
  slices: SliceWire[];
  connected_throughout: boolean;
  coverage_plan?: CoveragePlanWire;
}

// POST /scene body: full replacement parameter set.
export interface ScenarioWire {
  platforms: Omit<PlatformWire, "position_at_reference">[];
  window: { start: number; end: number };
  comm_threshold: number;
  pair_thresholds?: { a: string; b: string; threshold: number }[];
}

export interface PostError {
  error: string;
  field: string;
}
