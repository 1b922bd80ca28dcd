/** Browser entry point: sliders for the master hand, live slave
 * response, side-by-side skeletons, subspace gauges, method switcher,
 * and a calibration-pose recorder. */

import { ApiClient, PoseQueue } from "./api.js";
import { handSegments, project } from "./fk.js";
import { gaugeLabel, gauges } from "./gauges.js";
import { CalibrationDraft, VALID_LABELS, type CalibrationLabel } from "./recorder.js";
import {
  applyPoseResponse,
  convergenceBadge,
  initialView,
  setSlider,
  sliderValues,
  type UiSessionView,
} from "./state.js";
import type { Method, ModelSummary } from "./types.js";

const METHODS: Method[] = ["subspace", "joint", "fingertip"];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function drawHand(
  canvas: HTMLCanvasElement,
  model: ModelSummary,
  pose: number[],
  color: string,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const scale = canvas.width * 2.2;
  const cx = canvas.width * 0.15;
  const cy = canvas.height * 0.55;

  // palm outline: hull through the finger bases and the wrist
  ctx.strokeStyle = "#888";
  ctx.beginPath();
  const bases = model.fingers.map((f) =>
    project(f.base_position as [number, number, number], scale, cx, cy),
  );
  const wrist = project([0, 0, 0], scale, cx, cy);
  ctx.moveTo(wrist[0], wrist[1]);
  for (const [bx, by] of bases) ctx.lineTo(bx, by);
  ctx.closePath();
  ctx.stroke();

  let segments;
  try {
    segments = handSegments(model, pose);
  } catch (err) {
    showError(String(err));
    return;
  }
  ctx.strokeStyle = color;
  ctx.lineWidth = 3;
  for (const seg of segments) {
    const [x0, y0] = project(seg.from, scale, cx, cy);
    const [x1, y1] = project(seg.to, scale, cx, cy);
    ctx.beginPath();
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.stroke();
    ctx.beginPath();
    ctx.arc(x1, y1, 3, 0, 2 * Math.PI);
    ctx.stroke();
  }
}

function showError(message: string): void {
  const banner = el<HTMLDivElement>("error-banner");
  banner.textContent = message;
  banner.style.display = message ? "block" : "none";
}

function renderGauges(view: UiSessionView): void {
  const host = el<HTMLDivElement>("gauges");
  host.innerHTML = "";
  for (const g of gauges(view.subspace)) {
    const row = document.createElement("div");
    row.className = "gauge";
    const label = document.createElement("span");
    label.textContent = gaugeLabel(g);
    const bar = document.createElement("div");
    bar.className = "gauge-bar";
    const fill = document.createElement("div");
    fill.className = "gauge-fill";
    fill.style.width = `${(g.fill * 100).toFixed(1)}%`;
    bar.appendChild(fill);
    row.appendChild(label);
    row.appendChild(bar);
    host.appendChild(row);
  }
}

function render(view: UiSessionView): void {
  drawHand(el<HTMLCanvasElement>("master-canvas"), view.master, sliderValues(view), "#2266cc");
  drawHand(el<HTMLCanvasElement>("slave-canvas"), view.slave, view.slavePose, "#cc4422");
  renderGauges(view);
  el<HTMLSpanElement>("badge").textContent = convergenceBadge(view);
  el<HTMLSpanElement>("slave-pose").textContent = view.slavePose
    .map((v) => String(v))
    .join(", ");
}

async function boot(): Promise<void> {
  const base =
    new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8090";
  const api = new ApiClient(base);
  const models = await api.listModels();
  const master = models.find((m) => m.name === "human_default") ?? models[0];
  const slave = models.find((m) => m.name === "robot_default") ?? models[1];
  let method: Method = "subspace";
  const sessionId = await api.openSession(master.name, slave.name, method);
  let view = initialView(sessionId, master, slave, method);

  const queue = new PoseQueue(
    (angles) => api.mapPose(sessionId, angles),
    (resp) => {
      view = applyPoseResponse(view, resp);
      render(view);
    },
    (err) => showError(String(err)),
  );

  const sliderHost = el<HTMLDivElement>("sliders");
  view.sliders.forEach((s, i) => {
    const row = document.createElement("label");
    row.className = "slider-row";
    const name = document.createElement("span");
    name.textContent = s.name;
    const input = document.createElement("input");
    input.type = "range";
    input.min = String(s.min);
    input.max = String(s.max);
    input.step = "0.001";
    input.value = String(s.value);
    input.addEventListener("input", () => {
      view = setSlider(view, i, Number(input.value));
      queue.push(sliderValues(view));
      render(view);
    });
    row.appendChild(name);
    row.appendChild(input);
    sliderHost.appendChild(row);
  });

  const methodSelect = el<HTMLSelectElement>("method");
  for (const m of METHODS) {
    const opt = document.createElement("option");
    opt.value = m;
    opt.textContent = m;
    methodSelect.appendChild(opt);
  }
  methodSelect.addEventListener("change", async () => {
    try {
      method = methodSelect.value as Method;
      await api.setMethod(sessionId, method);
      view = { ...view, method };
      queue.push(sliderValues(view));
    } catch (err) {
      showError(String(err));
    }
  });

  const draft = new CalibrationDraft(master.name);
  const labelSelect = el<HTMLSelectElement>("record-label");
  for (const label of VALID_LABELS) {
    const opt = document.createElement("option");
    opt.value = label;
    opt.textContent = label;
    labelSelect.appendChild(opt);
  }
  el<HTMLButtonElement>("record").addEventListener("click", () => {
    draft.record([labelSelect.value as CalibrationLabel], sliderValues(view));
    el<HTMLSpanElement>("record-count").textContent = String(draft.count);
  });
  el<HTMLButtonElement>("download").addEventListener("click", () => {
    const blob = new Blob([draft.toYaml()], { type: "application/x-yaml" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `${master.name}.cal`;
    a.click();
    URL.revokeObjectURL(a.href);
  });

  render(view);
  queue.push(sliderValues(view));
}

boot().catch((err) => showError(String(err)));
