/** Calibration-set drafting: capture labeled slider poses and emit the
 * exact calibration file format the backend's calibrate command reads. */

export const VALID_LABELS = [
  "alpha_min",
  "alpha_max",
  "sigma_min",
  "sigma_max",
  "epsilon_min",
  "epsilon_max",
] as const;

export type CalibrationLabel = (typeof VALID_LABELS)[number];

export interface DraftPose {
  labels: CalibrationLabel[];
  angles: number[];
}

/** Format a double the way the backend's YAML writer does: always a
 * decimal point on integral values, scientific notation with a
 * two-digit exponent below 1e-4. */
export function formatFloat(x: number): string {
  if (Number.isInteger(x) && Math.abs(x) < 1e16) return x.toFixed(1);
  const pad = (s: string) => s.replace(/e([+-])(\d)$/, "e$10$2");
  if (x !== 0 && Math.abs(x) < 1e-4) return pad(x.toExponential());
  const s = x.toString();
  return s.includes("e") ? pad(s) : s;
}

export class CalibrationDraft {
  private poses: DraftPose[] = [];

  constructor(public modelName: string) {}

  record(labels: CalibrationLabel[], angles: number[]): void {
    for (const label of labels) {
      if (!VALID_LABELS.includes(label)) {
        throw new Error(`unknown calibration label '${label}'`);
      }
    }
    if (labels.length === 0) throw new Error("a calibration pose needs at least one label");
    this.poses.push({ labels: labels.slice(), angles: angles.slice() });
  }

  get count(): number {
    return this.poses.length;
  }

  clear(): void {
    this.poses = [];
  }

  /** Serialize in the calibration file format (YAML). */
  toYaml(): string {
    const lines: string[] = [`model_name: ${this.modelName}`, "poses:"];
    for (const pose of this.poses) {
      lines.push("- labels:");
      for (const label of pose.labels) lines.push(`  - ${label}`);
      lines.push("  angles:");
      for (const a of pose.angles) lines.push(`  - ${formatFloat(a)}`);
    }
    return lines.join("\n") + "\n";
  }
}
