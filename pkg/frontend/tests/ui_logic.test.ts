/** Unit tests for the UI-side plumbing: request coalescing and
 * calibration-set drafting. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { PoseQueue } from "../src/api.js";
import { CalibrationDraft, formatFloat } from "../src/recorder.js";
import type { PoseResponse } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

function fakeResponse(angles: number[]): PoseResponse {
  return {
    slave_angles: angles,
    subspace: { alpha: 0, sigma: 0, epsilon: 0 },
    fingertips: { master: {}, slave: {} },
    method: "subspace",
    convergence: null,
  };
}

describe("pose request coalescing", () => {
  it("keeps at most one request in flight and drops stale poses", async () => {
    const sent: number[][] = [];
    let release: (() => void) | null = null;
    const queue = new PoseQueue(
      (angles) =>
        new Promise((resolve) => {
          sent.push(angles);
          release = () => resolve(fakeResponse(angles));
        }),
      () => {},
    );

    queue.push([1]);
    queue.push([2]);
    queue.push([3]);
    queue.push([4]);
    expect(sent).toEqual([[1]]); // one in flight, the rest coalesced

    release!();
    await Promise.resolve();
    await Promise.resolve();
    expect(sent).toEqual([[1], [4]]); // only the latest pending pose went out

    release!();
    await Promise.resolve();
    await Promise.resolve();
    expect(sent).toEqual([[1], [4]]); // nothing pending, nothing extra sent
  });

  it("delivers responses in order", async () => {
    const seen: number[] = [];
    const queue = new PoseQueue(
      async (angles) => fakeResponse(angles),
      (resp) => seen.push(resp.slave_angles[0]),
    );
    queue.push([1]);
    await new Promise((r) => setTimeout(r, 0));
    queue.push([2]);
    await new Promise((r) => setTimeout(r, 0));
    expect(seen).toEqual([1, 2]);
  });
});

describe("calibration draft", () => {
  it("emits the exact calibration file format", () => {
    const golden = JSON.parse(
      readFileSync(join(here, "..", "fixtures", "calibration_draft.json"), "utf8"),
    ) as { draft: { model_name: string; poses: { labels: string[]; angles: number[] }[] }; yaml: string };

    const draft = new CalibrationDraft(golden.draft.model_name);
    for (const pose of golden.draft.poses) {
      draft.record(pose.labels as never, pose.angles);
    }
    expect(draft.toYaml()).toBe(golden.yaml);
  });

  it("rejects unknown labels and empty label lists", () => {
    const draft = new CalibrationDraft("human_default");
    expect(() => draft.record(["spread_max" as never], [0])).toThrow(/unknown/);
    expect(() => draft.record([], [0])).toThrow(/at least one label/);
  });

  it("formats floats like the backend YAML writer", () => {
    expect(formatFloat(0)).toBe("0.0");
    expect(formatFloat(1)).toBe("1.0");
    expect(formatFloat(-3)).toBe("-3.0");
    expect(formatFloat(0.9)).toBe("0.9");
    expect(formatFloat(0.30000000000000004)).toBe("0.30000000000000004");
    expect(formatFloat(0.0001)).toBe("0.0001");
    expect(formatFloat(0.00001)).toBe("1e-05");
    expect(formatFloat(1.5e-7)).toBe("1.5e-07");
  });
});
