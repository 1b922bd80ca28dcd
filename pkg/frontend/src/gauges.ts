/** Bounded gauge widgets for the subspace point. The numeric label is
 * the verbatim service value; only the bar fill is scaled for display. */

import type { SubspacePoint } from "./types.js";

export interface Gauge {
  axis: "alpha" | "sigma" | "epsilon";
  /** verbatim service value, also used for the on-screen label */
  value: number;
  /** bar fill in [0, 1] over the display range */
  fill: number;
  lo: number;
  hi: number;
}

export const GAUGE_RANGE: [number, number] = [-1.5, 1.5];

export function gauges(t: SubspacePoint): Gauge[] {
  const [lo, hi] = GAUGE_RANGE;
  const make = (axis: Gauge["axis"], value: number): Gauge => ({
    axis,
    value,
    fill: Math.min(1, Math.max(0, (value - lo) / (hi - lo))),
    lo,
    hi,
  });
  return [make("alpha", t.alpha), make("sigma", t.sigma), make("epsilon", t.epsilon)];
}

export function gaugeLabel(g: Gauge): string {
  return `${g.axis} = ${g.value}`;
}
