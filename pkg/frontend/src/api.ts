/** Typed client for the retargeting service, plus a request coalescer
 * that keeps at most one /pose request in flight. */

import type { Method, ModelSummary, PoseResponse } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (u, i) => fetch(u, i),
  ) {}

  private async call<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    if (!resp.ok) {
      const body = await resp.text();
      throw new Error(`${path} failed (${resp.status}): ${body}`);
    }
    return (await resp.json()) as T;
  }

  listModels(): Promise<ModelSummary[]> {
    return this.call("/models");
  }

  async openSession(master: string, slave: string, method: Method): Promise<string> {
    const out = await this.call<{ id: string }>("/session", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ master, slave, method }),
    });
    return out.id;
  }

  setMethod(sessionId: string, method: Method): Promise<{ method: string }> {
    return this.call(`/session/${sessionId}/method`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ method }),
    });
  }

  mapPose(sessionId: string, angles: number[]): Promise<PoseResponse> {
    return this.call(`/session/${sessionId}/pose`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ angles }),
    });
  }
}

/** Serializes /pose traffic: while one request is in flight, rapid
 * slider moves overwrite a single pending pose, so intermediate poses
 * are dropped and at most one request is outstanding. */
export class PoseQueue {
  private inFlight = false;
  private pending: number[] | null = null;

  constructor(
    private send: (angles: number[]) => Promise<PoseResponse>,
    private onResult: (resp: PoseResponse) => void,
    private onError: (err: unknown) => void = () => {},
  ) {}

  push(angles: number[]): void {
    this.pending = angles.slice();
    void this.drain();
  }

  private async drain(): Promise<void> {
    if (this.inFlight || this.pending === null) return;
    const angles = this.pending;
    this.pending = null;
    this.inFlight = true;
    try {
      const resp = await this.send(angles);
      this.onResult(resp);
    } catch (err) {
      this.onError(err);
    } finally {
      this.inFlight = false;
    }
    if (this.pending !== null) void this.drain();
  }
}
