// Editable-control ranges. These mirror the original design tool's
// 24 x 24 floor grid and slider limits; they are config defaults, not
// physics, so real missions can swap them out wholesale.

export interface RangeSpec {
  min: number;
  max: number;
  step: number;
}

export interface ControlRanges {
  centerX: RangeSpec;
  centerZ: RangeSpec;
  height: RangeSpec;
  radius: RangeSpec;
  threshold: RangeSpec;
  speed: RangeSpec; // |angular velocity|, rad/s
  gridExtent: number;
}

export const DEFAULT_RANGES: ControlRanges = {
  centerX: { min: -12, max: 12, step: 0.25 },
  centerZ: { min: -12, max: 12, step: 0.25 },
  height: { min: 1, max: 10, step: 0.25 },
  radius: { min: 1, max: 10, step: 0.25 },
  threshold: { min: 1, max: 20, step: 0.25 },
  speed: { min: 0, max: 5, step: 0.05 },
  gridExtent: 12,
};

export function clamp(value: number, range: RangeSpec): number {
  return Math.min(range.max, Math.max(range.min, value));
}
