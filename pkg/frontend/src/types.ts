/** Shapes of the HTTP service payloads the UI consumes. */

export interface JointSummary {
  name: string;
  min: number;
  max: number;
  axis: "alpha" | "sigma" | "epsilon" | "none";
}

export interface FingerSummary {
  name: string;
  joints: string[];
  base_position: number[];
  base_orientation: number[][];
  link_lengths: number[];
  has_adduction: boolean;
}

export interface ModelSummary {
  name: string;
  joints: JointSummary[];
  fingers: FingerSummary[];
  origin_pose: number[];
}

export interface SubspacePoint {
  alpha: number;
  sigma: number;
  epsilon: number;
}

export interface ConvergenceInfo {
  iterations: number;
  final_error: number;
  converged: boolean;
}

export interface PoseResponse {
  slave_angles: number[];
  subspace: SubspacePoint;
  fingertips: {
    master: Record<string, number[]>;
    slave: Record<string, number[]>;
  };
  method: string;
  convergence: Record<string, ConvergenceInfo> | null;
}

export type Method = "subspace" | "joint" | "fingertip";
