import init, { toy_curve, toy_shots, angle_landscape } from "./pkg/kernelshot_wasm.js";

const $ = (id) => document.getElementById(id);
const TWO_PI = 2 * Math.PI;
const CURVE_STEPS = 241;
const GRID_POINTS = 65;

const state = {
  theta: Math.PI / 2,
  shotsExp: 10,
  seed: 42,
  noiseP: 0,
  phi: 0,
  samples: [],
  lastShot: null,
};

function fail(err) {
  $("error").textContent = String(err);
}

// Curve plot: theta on x in [0, 2pi], values on y in [-0.6, 0.6].

function curveMap(canvas) {
  const m = { left: 44, right: 10, top: 12, bottom: 28 };
  const w = canvas.width - m.left - m.right;
  const h = canvas.height - m.top - m.bottom;
  return {
    x: (theta) => m.left + (theta / TWO_PI) * w,
    y: (v) => m.top + (0.6 - v) / 1.2 * h,
    m, w, h,
  };
}

function drawCurve() {
  const body = JSON.parse(toy_curve(CURVE_STEPS, state.noiseP));
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const map = curveMap(canvas);
  ctx.clearRect(0, 0, canvas.width, canvas.height);

  ctx.strokeStyle = "#d4d9e2";
  ctx.fillStyle = "#5a6475";
  ctx.font = "12px system-ui";
  ctx.lineWidth = 1;
  for (const v of [-0.5, 0, 0.5]) {
    ctx.beginPath();
    ctx.moveTo(map.x(0), map.y(v));
    ctx.lineTo(map.x(TWO_PI), map.y(v));
    ctx.stroke();
    ctx.fillText(v.toFixed(1), 8, map.y(v) + 4);
  }
  const ticks = [[0, "0"], [Math.PI, "π"], [TWO_PI, "2π"]];
  for (const [t, label] of ticks) {
    ctx.fillText(label, map.x(t) - 4, canvas.height - 8);
  }

  const plot = (values, color, dashed) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = 1.6;
    ctx.setLineDash(dashed ? [5, 4] : []);
    ctx.beginPath();
    body.theta.forEach((t, i) => {
      const px = map.x(t);
      const py = map.y(values[i]);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
    ctx.setLineDash([]);
  };
  plot(body.score, "#2257c4", false);
  if (state.noiseP > 0) plot(body.expectation, "#b3661a", true);

  ctx.strokeStyle = "#9aa3b2";
  ctx.setLineDash([3, 3]);
  ctx.beginPath();
  ctx.moveTo(map.x(state.theta), map.m.top);
  ctx.lineTo(map.x(state.theta), map.m.top + map.h);
  ctx.stroke();
  ctx.setLineDash([]);

  ctx.fillStyle = "#1f8a4c";
  for (const s of state.samples) {
    ctx.beginPath();
    ctx.arc(map.x(s.theta), map.y(s.mean), 3, 0, TWO_PI);
    ctx.fill();
  }

  ctx.fillStyle = "#2257c4";
  ctx.fillText("score", map.m.left + 6, map.m.top + 12);
  if (state.noiseP > 0) {
    ctx.fillStyle = "#b3661a";
    ctx.fillText("noisy expectation", map.m.left + 50, map.m.top + 12);
  }
}

function runShots() {
  const shots = 2 ** state.shotsExp;
  const body = JSON.parse(toy_shots(state.theta, shots, state.seed, state.noiseP));
  state.lastShot = body;
  state.samples.push({ theta: body.theta, mean: body.empirical_mean });
  if (state.samples.length > 200) state.samples.shift();
  $("out-score").textContent = body.score.toFixed(5);
  $("out-expectation").textContent = body.expectation.toFixed(5);
  $("out-mean").textContent = body.empirical_mean.toFixed(5);
  $("out-labels").textContent = `${body.label_mean} / ${body.label_majority}`;
  $("out-planned").textContent =
    body.planned_shots > 0 ? body.planned_shots : "no finite plan";
  drawCurve();
}

// Landscape: one filled cell per grid point, blue (low) to yellow (high).

function heat(v, top) {
  const t = top > 0 ? v / top : 0;
  const r = Math.round(28 + 225 * t);
  const g = Math.round(40 + 190 * t);
  const b = Math.round(110 - 60 * t);
  return `rgb(${r},${g},${b})`;
}

function drawLandscape() {
  const body = JSON.parse(angle_landscape(state.theta, GRID_POINTS, state.phi));
  const canvas = $("landscape");
  const ctx = canvas.getContext("2d");
  const n = body.theta0.length;
  const cell = canvas.width / n;
  const top = body.max.objective;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      ctx.fillStyle = heat(body.objective[i * n + j], top);
      ctx.fillRect(j * cell, canvas.height - (i + 1) * cell, cell + 0.5, cell + 0.5);
    }
  }
  const px = (body.max.theta1 / TWO_PI) * canvas.width;
  const py = canvas.height - (body.max.theta0 / TWO_PI) * canvas.height;
  ctx.strokeStyle = "#ffffff";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  ctx.moveTo(px - 6, py); ctx.lineTo(px + 6, py);
  ctx.moveTo(px, py - 6); ctx.lineTo(px, py + 6);
  ctx.stroke();
  $("out-objective").textContent = top.toFixed(5);
  $("out-argmax").textContent =
    `(${body.max.theta0.toFixed(3)}, ${body.max.theta1.toFixed(3)})`;
}

function refreshLabels() {
  $("theta-value").textContent = state.theta.toFixed(3);
  $("shots-value").textContent = String(2 ** state.shotsExp);
  $("noise-value").textContent = state.noiseP.toFixed(2);
  $("phi-value").textContent = state.phi.toFixed(3);
}

function redrawAll() {
  refreshLabels();
  try {
    runShots();
    drawLandscape();
  } catch (err) {
    fail(err);
  }
}

function wire() {
  $("theta").addEventListener("input", (e) => {
    state.theta = Number(e.target.value);
    redrawAll();
  });
  $("shots").addEventListener("input", (e) => {
    state.shotsExp = Number(e.target.value);
    redrawAll();
  });
  $("noise").addEventListener("input", (e) => {
    state.noiseP = Number(e.target.value);
    state.samples = [];
    redrawAll();
  });
  $("seed").addEventListener("change", (e) => {
    state.seed = Math.max(0, Math.floor(Number(e.target.value) || 0));
    redrawAll();
  });
  $("resample").addEventListener("click", () => {
    state.seed += 1;
    $("seed").value = state.seed;
    redrawAll();
  });
  $("phi").addEventListener("input", (e) => {
    state.phi = Number(e.target.value);
    refreshLabels();
    try {
      drawLandscape();
    } catch (err) {
      fail(err);
    }
  });
}

init().then(() => {
  wire();
  redrawAll();
}).catch(fail);
