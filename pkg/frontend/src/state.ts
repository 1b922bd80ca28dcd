/** UI session state. The UI performs no mapping math: every slave pose,
 * subspace value, and convergence figure is stored verbatim from the
 * service response. */

import type { ConvergenceInfo, Method, ModelSummary, PoseResponse } from "./types.js";

export interface SliderState {
  name: string;
  min: number;
  max: number;
  value: number;
}

export interface UiSessionView {
  sessionId: string;
  master: ModelSummary;
  slave: ModelSummary;
  method: Method;
  sliders: SliderState[];
  slavePose: number[];
  subspace: { alpha: number; sigma: number; epsilon: number };
  fingertips: PoseResponse["fingertips"] | null;
  convergence: Record<string, ConvergenceInfo> | null;
  error: string | null;
}

/** Slider per master joint, bounded exactly by the served limits. */
export function slidersFor(master: ModelSummary): SliderState[] {
  return master.joints.map((j, i) => ({
    name: j.name,
    min: j.min,
    max: j.max,
    value: master.origin_pose[i],
  }));
}

export function initialView(
  sessionId: string,
  master: ModelSummary,
  slave: ModelSummary,
  method: Method,
): UiSessionView {
  return {
    sessionId,
    master,
    slave,
    method,
    sliders: slidersFor(master),
    slavePose: slave.origin_pose.slice(),
    subspace: { alpha: 0, sigma: 0, epsilon: 0 },
    fingertips: null,
    convergence: null,
    error: null,
  };
}

/** Copy a /pose response into the view without transforming any value. */
export function applyPoseResponse(view: UiSessionView, resp: PoseResponse): UiSessionView {
  return {
    ...view,
    slavePose: resp.slave_angles,
    subspace: resp.subspace,
    fingertips: resp.fingertips,
    convergence: resp.convergence,
    error: null,
  };
}

export function sliderValues(view: UiSessionView): number[] {
  return view.sliders.map((s) => s.value);
}

export function setSlider(view: UiSessionView, index: number, value: number): UiSessionView {
  const s = view.sliders[index];
  const clamped = Math.min(s.max, Math.max(s.min, value));
  const sliders = view.sliders.slice();
  sliders[index] = { ...s, value: clamped };
  return { ...view, sliders };
}

/** Badge summary for fingertip mode, verbatim service numbers. */
export function convergenceBadge(view: UiSessionView): string {
  if (view.method !== "fingertip" || view.convergence === null) return "";
  const parts = Object.entries(view.convergence).map(([finger, c]) => {
    const tag = c.converged ? "ok" : "no";
    return `${finger}: ${tag} err=${c.final_error}`;
  });
  return parts.join("  ");
}
