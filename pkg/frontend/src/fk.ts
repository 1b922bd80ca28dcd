/** Finger chain forward kinematics for skeleton rendering, mirroring
 * the backend's conventions: rigid base transform, optional adduction
 * about local z, then planar flexion links about local y curling toward
 * local -z. Used only for drawing; all pose values come from the
 * service. */

import type { FingerSummary, ModelSummary } from "./types.js";

export type Vec3 = [number, number, number];

function matVec(m: number[][], v: Vec3): Vec3 {
  return [
    m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
    m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
    m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
  ];
}

function add(a: Vec3, b: Vec3): Vec3 {
  return [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
}

/** Joint positions along one finger: base, each link end, tip last. */
export function chainPoints(finger: FingerSummary, chainState: number[]): Vec3[] {
  const offset = finger.has_adduction ? 1 : 0;
  const ad = finger.has_adduction ? chainState[0] : 0;
  const ca = Math.cos(ad);
  const sa = Math.sin(ad);

  const points: Vec3[] = [[0, 0, 0]];
  let x = 0;
  let z = 0;
  let phi = 0;
  for (let k = 0; k < finger.link_lengths.length; k++) {
    phi += chainState[offset + k];
    x += finger.link_lengths[k] * Math.cos(phi);
    z -= finger.link_lengths[k] * Math.sin(phi);
    points.push([x, 0, z]);
  }
  const base = finger.base_position as Vec3;
  return points.map((p) => {
    const rotated: Vec3 = [ca * p[0] - sa * p[1], sa * p[0] + ca * p[1], p[2]];
    return add(base, matVec(finger.base_orientation, rotated));
  });
}

export interface Segment {
  from: Vec3;
  to: Vec3;
  finger: string;
}

/** Line segments for a whole hand at the given pose. */
export function handSegments(model: ModelSummary, pose: number[]): Segment[] {
  if (pose.length !== model.joints.length) {
    throw new Error(
      `pose has ${pose.length} entries, model '${model.name}' has ${model.joints.length} joints`,
    );
  }
  const index = new Map(model.joints.map((j, i) => [j.name, i]));
  const segments: Segment[] = [];
  for (const finger of model.fingers) {
    const chainState = finger.joints.map((name) => pose[index.get(name)!]);
    const pts = chainPoints(finger, chainState);
    for (let k = 0; k + 1 < pts.length; k++) {
      segments.push({ from: pts[k], to: pts[k + 1], finger: finger.name });
    }
  }
  return segments;
}

/** Tip position of one finger (last chain point). */
export function fingertip(model: ModelSummary, pose: number[], name: string): Vec3 {
  const finger = model.fingers.find((f) => f.name === name);
  if (!finger) throw new Error(`unknown finger '${name}'`);
  const index = new Map(model.joints.map((j, i) => [j.name, i]));
  const chainState = finger.joints.map((n) => pose[index.get(n)!]);
  const pts = chainPoints(finger, chainState);
  return pts[pts.length - 1];
}

/** 2.5D orthographic projection: screen x follows world x, screen y
 * blends world y (across the palm) with world z (out of the palm). */
export function project(p: Vec3, scale: number, cx: number, cy: number): [number, number] {
  return [cx + scale * p[0], cy - scale * (p[1] * 0.6 + p[2] * 0.8)];
}
