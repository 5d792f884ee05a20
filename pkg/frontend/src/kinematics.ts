// Client-side closed-form kinematics, identical to the server's:
// positions are recomputed per frame instead of streamed, so the wire
// protocol stays tiny.

export interface OrbitParams {
  center_x: number;
  center_y: number;
  altitude: number;
  orbit_radius: number;
  angular_velocity: number;
  initial_phase: number;
}

export interface Point3 {
  x: number;
  y: number;
  z: number;
}

export function positionAt(p: OrbitParams, t: number): Point3 {
  const angle = p.initial_phase + p.angular_velocity * t;
  return {
    x: p.center_x + p.orbit_radius * Math.cos(angle),
    y: p.center_y + p.orbit_radius * Math.sin(angle),
    z: p.altitude,
  };
}

export function pairDistance(p: OrbitParams, q: OrbitParams, t: number): number {
  const a = positionAt(p, t);
  const b = positionAt(q, t);
  const dx = a.x - b.x;
  const dy = a.y - b.y;
  const dz = a.z - b.z;
  return Math.sqrt(dx * dx + dy * dy + dz * dz);
}

export function linkLive(p: OrbitParams, q: OrbitParams, t: number, threshold: number): boolean {
  return pairDistance(p, q, t) <= threshold;
}

/** Bisect the threshold crossing of s(t) - D inside [lo, hi].
 *
 * The endpoints must straddle the threshold.  Used by tests to check
 * that client-side link toggles line up with the server's interval
 * endpoints.
 */
export function crossingTime(
  p: OrbitParams,
  q: OrbitParams,
  threshold: number,
  lo: number,
  hi: number,
  tol = 1e-9,
): number {
  let fLo = pairDistance(p, q, lo) - threshold;
  if (fLo === 0) return lo;
  for (let i = 0; i < 200 && hi - lo > tol; i++) {
    const mid = 0.5 * (lo + hi);
    const fMid = pairDistance(p, q, mid) - threshold;
    if (fMid === 0) return mid;
    if ((fMid > 0) === (fLo > 0)) {
      lo = mid;
      fLo = fMid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}
