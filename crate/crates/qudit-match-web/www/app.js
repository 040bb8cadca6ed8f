import init, { runMatch, noiseSweep, showCircuit } from "./pkg/qudit_match_web.js";

const $ = (id) => document.getElementById(id);

function showError(e) {
  const el = $("error");
  el.textContent = e ? String(e.message ?? e) : "";
  el.hidden = !e;
}

function guarded(f) {
  return () => {
    try {
      showError(null);
      f();
    } catch (e) {
      showError(e);
    }
  };
}

function clear(canvas) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.font = "11px ui-monospace, monospace";
  return ctx;
}

// Match panel

function drawBars(canvas, probs, marked) {
  const ctx = clear(canvas);
  const pad = 24;
  const w = (canvas.width - 2 * pad) / probs.length;
  const h = canvas.height - 2 * pad;
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad + h);
  ctx.lineTo(canvas.width - pad, pad + h);
  ctx.stroke();
  probs.forEach((p, i) => {
    ctx.fillStyle = marked.has(i) ? "#1f77b4" : "#aaa";
    ctx.fillRect(pad + i * w + 2, pad + h * (1 - p), Math.max(w - 4, 1), h * p);
    ctx.fillStyle = "#333";
    ctx.textAlign = "center";
    ctx.fillText(String(i), pad + (i + 0.5) * w, pad + h + 14);
    if (p > 0.02) ctx.fillText(p.toFixed(2), pad + (i + 0.5) * w, pad + h * (1 - p) - 4);
  });
}

const updateMatch = guarded(() => {
  const iters = Number($("iters").value);
  $("iters-out").textContent = iters < 0 ? "auto" : String(iters);
  const v = JSON.parse(runMatch($("text").value, $("pattern").value, iters));
  drawBars($("match-plot"), v.probabilities, new Set(v.classical));
  const c = v.cost;
  $("match-info").textContent =
    `K=${v.k}  r=${v.iterations}  top=${v.top}  verified=${v.verified}  ` +
    `matches=[${v.classical.join(",")}]  cnot=${c.cnot} ternary=${c.ternary} ` +
    `quaternary=${c.quaternary} t=${c.t}`;
});

// Noise panel

function drawLines(canvas, xs, series) {
  const ctx = clear(canvas);
  const pad = 36;
  const w = canvas.width - 2 * pad;
  const h = canvas.height - 2 * pad;
  const xmax = xs[xs.length - 1] || 1;
  const ymin = Math.min(...series.flatMap((s) => s.ys));
  const lo = Math.max(0, Math.floor(ymin * 10) / 10);
  const px = (x) => pad + (w * x) / xmax;
  const py = (y) => pad + h * (1 - (y - lo) / (1 - lo || 1));
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w, h);
  ctx.fillStyle = "#333";
  ctx.textAlign = "right";
  ctx.fillText("1", pad - 4, pad + 4);
  ctx.fillText(lo.toFixed(1), pad - 4, pad + h + 4);
  ctx.textAlign = "center";
  ctx.fillText("0", pad, pad + h + 16);
  ctx.fillText(xmax.toFixed(3), pad + w, pad + h + 16);
  ctx.fillText("gate error", pad + w / 2, pad + h + 16);
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    s.ys.forEach((y, i) => (i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y))));
    ctx.stroke();
  }
  ctx.lineWidth = 1;
}

const updateNoise = guarded(() => {
  const eps = Number($("eps").value);
  $("eps-out").textContent = eps.toFixed(3);
  const v = JSON.parse(noiseSweep(eps, 80, $("mode").value));
  drawLines($("noise-plot"), v.epsilon, [
    { ys: v.proposed, color: "#1f77b4" },
    { ys: v.baseline, color: "#d62728" },
  ]);
});

// Circuit panel

// "C[w0@1] X+1%3 w1" -> controls [[0, 1]], label "X+1%3", target 1.
function parseOp(line) {
  const controls = [...line.matchAll(/w(\d+)@(\d+)/g)].map((m) => [Number(m[1]), Number(m[2])]);
  const rest = line.replace(/^C\[[^\]]*\]\s*/, "").trim().split(/\s+/);
  const targets = rest.slice(1).map((t) => Number(t.slice(1)));
  return { controls, label: rest[0], targets };
}

function drawCircuit(canvas, v) {
  const ops = v.dump.trim().split("\n").slice(2).map(parseOp);
  const wires = v.dims.length;
  const gap = Math.min(36, (canvas.height - 20) / wires);
  canvas.height = Math.max(120, gap * wires + 20);
  const ctx = clear(canvas);
  const col = Math.min(56, (canvas.width - 50) / Math.max(v.layers.length, 1));
  const y = (q) => 10 + gap * (q + 0.5);
  const colors = { 2: "#555", 3: "#2ca02c", 4: "#9467bd" };
  v.dims.forEach((d, q) => {
    ctx.strokeStyle = colors[d] ?? "#555";
    ctx.beginPath();
    ctx.moveTo(40, y(q));
    ctx.lineTo(canvas.width - 4, y(q));
    ctx.stroke();
    ctx.fillStyle = "#333";
    ctx.textAlign = "right";
    ctx.fillText(`w${q}:${d}`, 36, y(q) + 4);
  });
  v.layers.forEach((layer, t) => {
    const x = 40 + col * (t + 0.5);
    for (const i of layer) {
      const op = ops[i];
      const all = [...op.controls.map((c) => c[0]), ...op.targets];
      ctx.strokeStyle = "#222";
      ctx.beginPath();
      ctx.moveTo(x, y(Math.min(...all)));
      ctx.lineTo(x, y(Math.max(...all)));
      ctx.stroke();
      for (const [q, level] of op.controls) {
        ctx.fillStyle = "#222";
        ctx.beginPath();
        ctx.arc(x, y(q), 4, 0, 2 * Math.PI);
        ctx.fill();
        ctx.fillText(String(level), x + 10, y(q) - 5);
      }
      for (const q of op.targets) {
        const label = op.label.replace(/^X/, "");
        const bw = Math.max(20, ctx.measureText(label).width + 6);
        ctx.fillStyle = "#fff";
        ctx.fillRect(x - bw / 2, y(q) - 8, bw, 16);
        ctx.strokeRect(x - bw / 2, y(q) - 8, bw, 16);
        ctx.fillStyle = "#222";
        ctx.textAlign = "center";
        ctx.fillText(label, x, y(q) + 4);
      }
    }
  });
}

const updateCircuit = guarded(() => {
  const name = $("name").value;
  $("wires").disabled = name !== "mct";
  const v = JSON.parse(showCircuit(name, Number($("wires").value)));
  drawCircuit($("circuit-plot"), v);
  const c = v.cost;
  $("circuit-info").textContent =
    `${v.name}: depth ${v.layers.length}, cnot=${c.cnot} ternary=${c.ternary} ` +
    `quaternary=${c.quaternary} t=${c.t}`;
  $("dump").textContent = v.dump;
});

await init();
for (const id of ["text", "pattern", "iters"]) $(id).addEventListener("input", updateMatch);
for (const id of ["eps", "mode"]) $(id).addEventListener("input", updateNoise);
for (const id of ["name", "wires"]) $(id).addEventListener("input", updateCircuit);
updateMatch();
updateNoise();
updateCircuit();
