/** Contract tests against recorded service fixtures: the UI must show
 * service numbers verbatim, bound sliders by served limits, and render
 * with the same kinematics the service uses. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { fingertip, handSegments } from "../src/fk.js";
import { gaugeLabel, gauges } from "../src/gauges.js";
import {
  applyPoseResponse,
  convergenceBadge,
  initialView,
  slidersFor,
} from "../src/state.js";
import type { ModelSummary, PoseResponse } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

interface RecordedPose {
  request: { angles: number[] };
  response: PoseResponse;
}

interface Fixtures {
  models: ModelSummary[];
  subspace_poses: RecordedPose[];
  sigma_sweep: RecordedPose[];
  joint_poses: RecordedPose[];
  fingertip_poses: RecordedPose[];
}

const fixtures: Fixtures = JSON.parse(
  readFileSync(join(here, "..", "fixtures", "service_fixtures.json"), "utf8"),
);

function model(name: string): ModelSummary {
  const m = fixtures.models.find((x) => x.name === name);
  if (!m) throw new Error(`fixture model '${name}' missing`);
  return m;
}

const human = model("human_default");
const robot = model("robot_default");

function freshView(method: "subspace" | "joint" | "fingertip") {
  return initialView("fixture-session", human, robot, method);
}

describe("verbatim display of service responses", () => {
  it("stores slave poses and subspace values without transformation", () => {
    for (const rec of [...fixtures.subspace_poses, ...fixtures.joint_poses]) {
      const view = applyPoseResponse(freshView("subspace"), rec.response);
      // same array contents, element by element, no arithmetic applied
      expect(view.slavePose).toEqual(rec.response.slave_angles);
      expect(view.subspace).toEqual(rec.response.subspace);
    }
  });

  it("renders gauge labels from the exact response values", () => {
    for (const rec of fixtures.subspace_poses) {
      const g = gauges(rec.response.subspace);
      expect(gaugeLabel(g[0])).toBe(`alpha = ${rec.response.subspace.alpha}`);
      expect(gaugeLabel(g[1])).toBe(`sigma = ${rec.response.subspace.sigma}`);
      expect(gaugeLabel(g[2])).toBe(`epsilon = ${rec.response.subspace.epsilon}`);
      for (const gauge of g) {
        expect(gauge.fill).toBeGreaterThanOrEqual(0);
        expect(gauge.fill).toBeLessThanOrEqual(1);
      }
    }
  });

  it("shows the fingertip convergence badge from service numbers", () => {
    const rec = fixtures.fingertip_poses[1];
    const view = applyPoseResponse(freshView("fingertip"), rec.response);
    const badge = convergenceBadge(view);
    expect(rec.response.convergence).not.toBeNull();
    for (const [finger, c] of Object.entries(rec.response.convergence!)) {
      expect(badge).toContain(`${finger}: ${c.converged ? "ok" : "no"} err=${c.final_error}`);
    }
  });
});

describe("slider bounds", () => {
  it("equal the served joint limits for every joint", () => {
    for (const m of [human, robot]) {
      const sliders = slidersFor(m);
      expect(sliders.length).toBe(m.joints.length);
      sliders.forEach((s, i) => {
        expect(s.min).toBe(m.joints[i].min);
        expect(s.max).toBe(m.joints[i].max);
        expect(s.value).toBeGreaterThanOrEqual(s.min);
        expect(s.value).toBeLessThanOrEqual(s.max);
      });
    }
  });
});

describe("sigma slider sweep", () => {
  it("moves exactly the grasp-size-supported slave joints", () => {
    const sigmaJoints = new Set(
      robot.joints.filter((j) => j.axis === "sigma").map((j) => j.name),
    );
    expect(sigmaJoints).toEqual(new Set(["f0_prox", "f1_prox", "f2_prox"]));
    const poses = fixtures.sigma_sweep.map((r) => r.response.slave_angles);
    for (let k = 1; k < poses.length; k++) {
      const changed = new Set<string>();
      poses[k].forEach((v, j) => {
        if (v !== poses[k - 1][j]) changed.add(robot.joints[j].name);
      });
      expect(changed).toEqual(sigmaJoints);
    }
  });
});

describe("skeleton rendering", () => {
  it("uses the same kinematics as the service fingertips", () => {
    for (const rec of [...fixtures.subspace_poses, ...fixtures.fingertip_poses]) {
      for (const [name, tip] of Object.entries(rec.response.fingertips.master)) {
        const local = fingertip(human, rec.request.angles, name);
        local.forEach((v, i) => expect(v).toBeCloseTo(tip[i], 10));
      }
      for (const [name, tip] of Object.entries(rec.response.fingertips.slave)) {
        const local = fingertip(robot, rec.response.slave_angles, name);
        local.forEach((v, i) => expect(v).toBeCloseTo(tip[i], 10));
      }
    }
  });

  it("draws one segment per link and rejects wrong-length poses", () => {
    const links = human.fingers.reduce((n, f) => n + f.link_lengths.length, 0);
    expect(handSegments(human, human.origin_pose).length).toBe(links);
    expect(() => handSegments(human, [0, 0, 0])).toThrow(/pose has 3 entries/);
  });
});
