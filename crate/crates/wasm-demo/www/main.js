import init, { countComponents, sweepCurve, replayCase, caseNames } from "./pkg/fsgraph_wasm_demo.js";

const $ = (id) => document.getElementById(id);

const K33 = "r 3\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";
const C6 = "r 3\n0 3\n1 3\n1 4\n2 4\n2 5\n0 5\n";

function show(el, text, isError) {
  el.textContent = text;
  el.className = isError ? "err" : "";
}

function count() {
  try {
    const c = JSON.parse(countComponents($("x-bg").value, $("y-bg").value));
    const sizes = {};
    for (const s of c.component_sizes) sizes[s] = (sizes[s] || 0) + 1;
    const hist = Object.entries(sizes).map(([s, k]) => `${k} of size ${s}`).join(", ");
    show($("count-out"), `component_count = ${c.component_count}\nsizes = ${hist}\nparity split = ${c.parity_split[0]} + ${c.parity_split[1]}`);
  } catch (e) {
    show($("count-out"), String(e), true);
  }
}

function drawCurve(points) {
  const cv = $("curve");
  const g = cv.getContext("2d");
  const W = cv.width, H = cv.height, pad = 40;
  g.clearRect(0, 0, W, H);
  const xs = (c) => pad + ((c + 3) / 6) * (W - 2 * pad);
  const ys = (f) => H - pad - f * (H - 2 * pad);
  g.strokeStyle = "#999";
  g.beginPath();
  g.moveTo(pad, ys(0)); g.lineTo(W - pad, ys(0));
  g.moveTo(pad, ys(0)); g.lineTo(pad, ys(1));
  g.stroke();
  g.fillStyle = "#444";
  g.font = "12px sans-serif";
  for (let c = -3; c <= 3; c++) g.fillText(String(c), xs(c) - 4, H - pad + 16);
  for (const f of [0, 0.5, 1]) g.fillText(f.toFixed(1), 8, ys(f) + 4);
  g.setLineDash([4, 4]);
  g.beginPath(); g.moveTo(pad, ys(0.5)); g.lineTo(W - pad, ys(0.5)); g.stroke();
  g.setLineDash([]);
  const series = [["frac_two", "#1f6fd1"], ["frac_disc", "#d1521f"]];
  for (const [key, colour] of series) {
    g.strokeStyle = colour;
    g.fillStyle = colour;
    g.beginPath();
    points.forEach((p, i) => (i ? g.lineTo : g.moveTo).call(g, xs(p.c), ys(p[key])));
    g.stroke();
    for (const p of points) {
      g.beginPath(); g.arc(xs(p.c), ys(p[key]), 3, 0, 2 * Math.PI); g.fill();
    }
  }
  g.fillStyle = "#1f6fd1"; g.fillText("two components", W - 150, pad);
  g.fillStyle = "#d1521f"; g.fillText("disconnected", W - 150, pad + 16);
}

function sweep() {
  const r = Number($("sw-r").value), n = Number($("sw-n").value), seed = Number($("sw-seed").value);
  show($("sweep-out"), "running…");
  // let the message paint before the sweep blocks the page
  setTimeout(() => {
    try {
      const pts = JSON.parse(sweepCurve(r, n, seed));
      drawCurve(pts);
      const lines = pts.map((p) =>
        `c=${p.c.toFixed(0).padStart(2)}  p=${p.p.toFixed(5)}  two=${p.frac_two.toFixed(3)} ± ${p.se_two.toFixed(3)}  ` +
        `disc=${p.frac_disc.toFixed(3)}  X1=${p.mean_x1.toFixed(2)} (expect ${p.expected_x1.toFixed(2)})`);
      show($("sweep-out"), `r=${r} samples=${n} seed=${seed}\n` + lines.join("\n"));
    } catch (e) {
      show($("sweep-out"), String(e), true);
    }
  }, 10);
}

let replay = null;

function renderStep() {
  if (!replay) return;
  const i = Number($("step").value);
  const f = replay.frames[i];
  const prev = i > 0 ? replay.frames[i - 1].placement : f.placement;
  $("step-label").textContent = i === 0 ? "start" : `step ${i}: swap ${f.swap}`;
  const head = replay.tokens.map((t) => `<td>${t}'</td>`).join("");
  const row = f.placement.map((t, k) => `<td class="${t !== prev[k] ? "moved" : ""}">${t}</td>`).join("");
  $("replay-out").innerHTML =
    `<p>${replay.name}: ${replay.instantiations} instantiation(s), ` +
    `${replay.accepted ? "accepted" : "REJECTED"}. Y-edges: ${replay.y_edges.join(" ")}. X-edges: ${replay.x_edges.join(" ")}.</p>` +
    `<table class="place"><tr><td>position</td>${head}</tr><tr><td>token</td>${row}</tr></table>`;
}

function loadCase() {
  try {
    replay = JSON.parse(replayCase($("case").value));
    $("step").max = replay.frames.length - 1;
    $("step").value = 0;
    renderStep();
  } catch (e) {
    $("replay-out").innerHTML = `<p class="err">${e}</p>`;
  }
}

async function main() {
  await init();
  $("x-bg").value = K33;
  $("y-bg").value = C6;
  for (const name of JSON.parse(caseNames())) {
    const o = document.createElement("option");
    o.textContent = name;
    $("case").appendChild(o);
  }
  $("count").onclick = count;
  $("sweep").onclick = sweep;
  $("load-case").onclick = loadCase;
  $("step").oninput = renderStep;
  $("status").textContent = "ready";
  count();
  loadCase();
}

main().catch((e) => show($("status"), `failed to load: ${e}`, true));
